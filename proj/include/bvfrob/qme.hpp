#pragma once

#include "bvfrob/cyclic.hpp"
#include "bvfrob/tau_series.hpp"

namespace bvf {

/// P'(R_n) != 0 at some tau-order.
class ObstructionError : public MathError {
public:
    using MathError::MathError;
};

/// R_n has a negative power of hbar.
class NegativePowerError : public MathError {
public:
    using MathError::MathError;
};

/// A-valued tau-series algebra helpers (coefficients stored left of the monomial).
class TauAlgebra {
public:
    TauAlgebra(const BVAlgebra& A, TauVarsPtr vars) : A_(A), vars_(std::move(vars)) {}

    const TauVarsPtr& vars() const { return vars_; }
    /// (c tau^m)(c' tau^m') = (-1)^{|tau^m||c'|} c c' tau^m tau^m'.
    VecTau multiply(const VecTau& x, const VecTau& y, int order) const;
    /// exp(x) to tau-order `order`; x must have no tau-constant term.
    VecTau exp(const VecTau& x, int order) const;
    /// Apply an hbar-linear operator coefficientwise.
    VecTau apply(const OpSeries& op, const VecTau& x) const;
    /// Multiply every coefficient by hbar^k.
    static VecTau shift(const VecTau& x, int k);
    /// The constant series 1.
    VecTau one(int order) const;

private:
    const BVAlgebra& A_;
    TauVarsPtr vars_;
};

/// tau^i has degree 2 - |a_i|.
TauVarsPtr tau_variables(const GradedSpace& H);

struct QmeSolution {
    std::size_t mu = 0;
    int N = 0;
    int M = 0;
    TauVarsPtr vars;
    VecTau Gamma;                    // total degree 2, linear part sum alpha_i tau^i
    std::vector<VecTau> orders;      // orders[n] = Gamma^{(n)} (orders[0] empty)
    std::string gauge = "image of H'";
    Report report;
};

/// Delta exp(Gamma / hbar) truncated at tau-order N. Coefficients carry their trusted windows.
VecTau qme_residual(const BVAlgebra& A, const VecTau& Gamma, int N, int M);

/// Order-by-order solution with Gamma^{(n)} = -H'(R_n), R_n = -hbar Delta [exp(Gamma_{<n}/hbar)]_n.
/// Throws ObstructionError / NegativePowerError.
QmeSolution solve_qme(const BVAlgebra& A, const PerturbedRetract& PR, const GoodBasis& gb, const GradedSpace& H,
                      int N, int M);

/// Recomputes the residual, checks the H' gauge, degree homogeneity and the linear part.
Report verify_qme(const BVAlgebra& A, const PerturbedRetract& PR, const GoodBasis& gb, const QmeSolution& sol);

}  // namespace bvf
