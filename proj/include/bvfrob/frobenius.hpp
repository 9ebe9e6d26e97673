#pragma once

#include "bvfrob/qme.hpp"

#include <vector>

namespace bvf {

/// P'(x) extended hbar-linearly, with the check x - I'P'x = Delta(-H'x) for Delta-closed x.
/// Throws MathError if x is not closed at retained coefficients.
LaurentVec cohomology_class(const BVAlgebra& A, const PerturbedRetract& PR, const LaurentVec& x);

/// Coefficientwise cohomology class of an A-valued tau-series (no closedness check).
VecTau class_series(const PerturbedRetract& PR, const VecTau& x);

/// k-th coordinate of an H-valued series.
ScalarTau component(const VecTau& x, std::size_t k);

/// Nonnegative hbar part, coefficientwise.
ScalarTau nonnegative_part(const ScalarTau& x);
VecTau nonnegative_part(const VecTau& x);

struct FlatCoordinates {
    VecTau J;                     // [hbar e^{Gamma/hbar} - hbar] in H((hbar))[[t]]
    std::vector<ScalarTau> T;     // pi(J)^i(t) = t^i + O(t^2)
    std::vector<ScalarTau> phi;   // t^i = phi^i(tau), so that pi(J(phi(tau))) = sum a_i tau^i
    bool hbar_free = true;        // T has no positive hbar powers (then phi is the plain series inverse)
    VecTau Gamma;                 // Gamma re-expanded in tau
    Report report;
};

FlatCoordinates flat_coordinates(const BVAlgebra& A, const PerturbedRetract& PR, const QmeSolution& sol);

struct TangentFrame {
    std::vector<VecTau> sigma;       // sigma_i = [hbar d_i e^{Gamma/hbar}] (right derivative), H-valued
    std::vector<VecTau> second;      // second[i*mu+j] = [hbar^2 d_i d_j e^{Gamma/hbar}] (d_i applied first)
    std::vector<std::vector<ScalarTau>> pairing;  // K(hbar d_i e^{Gamma/hbar}, hbar d_j e^{Gamma/hbar})
    Report report;
};

TangentFrame tangent_frame(const BVAlgebra& A, const PerturbedRetract& PR, const Trace& tr,
                           const QmeSolution& sol, const FlatCoordinates& flat);

struct StructureConstants {
    std::size_t mu = 0;
    int order = 0;  // tau-order of the retained coefficients
    std::vector<std::vector<std::vector<ScalarTau>>> full;  // full[i][j][k] = A~^k_ij(hbar, tau)
    std::vector<std::vector<std::vector<ScalarTau>>> A;     // hbar^0 part
    Report report;
};

/// Expand [hbar d_j sigma_i] = sum_k sigma_k A~^k_ij mod L[[tau]] order by order.
StructureConstants structure_constants(const TangentFrame& frame, const QmeSolution& sol);

struct FrobeniusData {
    std::size_t mu = 0;
    int order = 0;
    std::vector<int> degrees;  // |a_i|
    std::size_t unit = 0;
    Matrix g;
    std::vector<std::vector<std::vector<ScalarTau>>> A;  // A[i][j][k] = A^k_ij
    std::vector<std::vector<std::vector<ScalarTau>>> c;  // c[i][j][k]
    ScalarTau Phi;                                        // no terms below cubic
    std::vector<std::vector<ScalarTau>> pairing;          // flatness surrogate
    Report report;
};

FrobeniusData metric_and_potential(const Matrix& K0, const GradedSpace& H, const StructureConstants& sc,
                                   const TangentFrame& frame);

/// Commutativity, associativity, unit, total symmetry of c, potential reconstruction, flatness surrogate.
Report verify_frobenius(const FrobeniusData& F, int N);

/// Third right derivative d_i, then d_j, then d_k.
ScalarTau third_derivative(const ScalarTau& f, std::size_t i, std::size_t j, std::size_t k);

}  // namespace bvf
