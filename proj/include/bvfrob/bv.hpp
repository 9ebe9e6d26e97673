#pragma once

#include "bvfrob/graded.hpp"
#include "bvfrob/laurent.hpp"
#include "bvfrob/report.hpp"

#include <vector>

namespace bvf {

/// Structure constant: e_i * e_j = coeff * e_k (summed over entries).
struct MultEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    Scalar coeff;
};

/// Finite-dimensional graded commutative algebra with a finitely supported
/// operator family Delta_0 = d, Delta_1, ..., Delta_K (Delta_k of degree 1 - 2k).
class BVAlgebra {
public:
    BVAlgebra() = default;
    /// Throws InputError when an entry breaks degree additivity or a delta has the wrong shape.
    BVAlgebra(SpacePtr space, std::size_t unit, const std::vector<MultEntry>& mult,
              std::vector<GradedMap> deltas);

    const SpacePtr& space() const { return space_; }
    std::size_t dim() const { return space_->dim(); }
    std::size_t unit() const { return unit_; }
    Vec unit_vector() const { return unit_vec(dim(), unit_); }

    /// Highest index with a nonzero operator (0 when only d is present).
    int K() const;
    /// Delta_k (zero map of degree 1 - 2k beyond the stored family).
    GradedMap delta(int k) const;
    const GradedMap& d() const { return deltas_[0]; }
    const std::vector<GradedMap>& deltas() const { return deltas_; }

    /// Left multiplication by a basis element.
    const GradedMap& left_mult(std::size_t i) const { return left_[i]; }
    /// Left multiplication by a homogeneous vector; throws MathError if a is mixed.
    GradedMap left_mult(const Vec& a) const;

    Vec multiply(const Vec& a, const Vec& b) const;
    Vec multiply_basis(std::size_t i, std::size_t j) const { return left_[i].column(j); }

    std::vector<MultEntry> mult_entries() const;

    /// Replace an operator (used by perturbers and tests).
    BVAlgebra with_delta(int k, GradedMap op) const;

private:
    SpacePtr space_;
    std::size_t unit_ = 0;
    std::vector<GradedMap> left_;
    std::vector<GradedMap> deltas_;
};

/// Unitality, graded commutativity and associativity on all basis pairs/triples.
Report validate_algebra(const BVAlgebra& A);

/// True iff every (r+1)-fold iterated commutator [..[D, L_a0], ..., L_ar] vanishes,
/// with [X, L_a] = X L_a - (-1)^{|X||a|} L_a X. Throws MathError for r < 0.
/// Relies on graded commutativity and associativity, which make the iterated
/// commutator graded-symmetric in a0..ar so only sorted tuples are visited.
bool operator_order(const BVAlgebra& A, const GradedMap& D, int r);

/// For each k <= k_check: degree of Delta_k, Delta_k(1) = 0, order <= k+1 and
/// sum_i Delta_i Delta_{k-i} = 0. k_check < 0 selects 2K.
Report validate_bv(const BVAlgebra& A, int k_check = -1);

/// Delta = sum_k hbar^k Delta_k truncated at hbar^M (exact once M >= K).
OpSeries delta_total(const BVAlgebra& A, int M);

/// delta = Delta - d = sum_{k>=1} hbar^k Delta_k, truncated like delta_total.
OpSeries delta_perturbation(const BVAlgebra& A, int M);

}  // namespace bvf
