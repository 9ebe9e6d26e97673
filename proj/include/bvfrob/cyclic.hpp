#pragma once

#include "bvfrob/degeneration.hpp"
#include "bvfrob/models.hpp"

#include <vector>

namespace bvf {

/// Linear functional supported in a single degree n.
struct Trace {
    Vec functional;
    int n = 0;
};

/// (a, b) = Tr(a * b).
Scalar pairing(const BVAlgebra& A, const Trace& tr, const Vec& a, const Vec& b);

/// K0(i, j) = (iota a_i, iota a_j) on the cohomology basis.
Matrix cohomology_pairing(const BVAlgebra& A, const Trace& tr, const Retract& R);

/// Trace support, graded symmetry, (D_k a, b) = (-1)^{|a|+k+1} (a, D_k b) for k <= K,
/// and perfectness of the induced pairing on H(A).
Report validate_cyclic(const BVAlgebra& A, const Trace& tr, const Retract& R);

/// K(alpha, beta) = sum_m hbar^m sum_{i+j=m} (-1)^j (alpha_i, beta_j).
/// Throws MathError when the total degrees sum to n plus an odd number.
LaurentScalar k_pairing(const BVAlgebra& A, const Trace& tr, const LaurentVec& alpha, const LaurentVec& beta);

/// hbar^0 coefficient.
Vec evaluate_at_zero(const LaurentVec& alpha);

/// (h a, b) = (-1)^{|a|} (a, h b) on all basis pairs with |a| + |b| = n + 1.
Report h_compatibility(const BVAlgebra& A, const Retract& R, const Trace& tr);

struct GoodBasis {
    std::vector<LaurentVec> alpha;  // alpha_i = S iota a_i
    Matrix K0;
    Report report;
};

/// alpha_i = S(iota a_i); checks K(alpha_i, alpha_j) = K0(a_i, a_j) mod hbar^{M+1},
/// the identities (iota a, h b) = (h b, h c) = 0, and T S = id.
GoodBasis good_basis(const BVAlgebra& A, const Retract& R, const Trace& tr, int M);

/// Tr((w |- a) b) = (-1)^{k(|a|+1)} Tr(a (w |- b)) for all basis pairs with |a| + |b| = n + k.
Report contraction_adjoint_check(const ExteriorAlgebra& ext, const BVAlgebra& A, const Multivector& w, int k);

/// Residue condition for L = hbar^{-1} span{alpha}[hbar^{-1}]: the hbar^{-1} coefficient of
/// K(hbar^{-s} alpha_i, hbar^{-t} alpha_j) vanishes for 1 <= s, t <= window. Also checks that the
/// classes of alpha are the identity in H(A) (so H((hbar)) = H[[hbar]] + L) and hbar^{-1} L in L.
Report opposite_filtration_check(const BVAlgebra& A, const Trace& tr, const std::vector<LaurentVec>& alpha,
                                 const std::vector<LaurentVec>& classes, int window);

}  // namespace bvf
