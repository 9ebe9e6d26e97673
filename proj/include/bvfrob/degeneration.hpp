#pragma once

#include "bvfrob/bv.hpp"
#include "bvfrob/retract.hpp"

#include <vector>

namespace bvf {

/// T_k = sum over compositions j1+...+jl = k of p D_j1 h D_j2 h ... h D_jl iota.
struct TransferredOperators {
    std::vector<GradedMap> W;  // W[k] = sum of words D_j1 h ... h D_jl iota (H -> A), W[0] unused
    std::vector<GradedMap> T;  // T[k] = p W[k], T[0] unused
    std::size_t words_total = 0;    // 2^{k-1} summed over k
    std::size_t words_skipped = 0;  // words containing a zero operator or landing outside A by degree
    bool degenerate = true;
    Report report;
};

TransferredOperators transferred_operators(const BVAlgebra& A, const Retract& R, int k_max);

/// d W_k p = 0 for k <= k_max.
Report closed_check(const BVAlgebra& A, const Retract& R, int k_max);

struct SplittingOperator {
    std::vector<GradedMap> s;  // s[0] = id, s[k] = -D_k h + h W_k p
    OpSeries S;                // id + sum hbar^k s_k; exact when every s_{k>M} vanishes by degree
    Report report;             // equation for S for k < M, and Delta S - S d mod hbar^{M+1}
};

SplittingOperator splitting_operator(const BVAlgebra& A, const Retract& R, int M);

/// a -> S(iota(a)), as an operator series H -> A, with Delta S iota = 0 checked mod hbar^{M+1}.
struct SplittingMap {
    OpSeries map;
    Report report;
};

SplittingMap splitting_map(const BVAlgebra& A, const Retract& R, int M);

/// Homological perturbation of (iota, p, h) by delta = sum_{k>=1} hbar^k D_k.
struct PerturbedRetract {
    OpSeries I;  // sum (h delta)^n iota
    OpSeries P;  // p sum (delta h)^n
    OpSeries H;  // sum (h delta)^n h
    int M = 0;
    bool exact = false;  // true when no term beyond hbar^M exists
    Report report;
};

PerturbedRetract perturbed_retract(const BVAlgebra& A, const Retract& R, int M);

/// Every coefficient of f at hbar^k, k <= min(M, precision), must vanish.
void expect_zero_series(Check& check, const OpSeries& f, int M, const std::string& what);

}  // namespace bvf
