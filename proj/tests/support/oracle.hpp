#pragma once

// Dense reference implementation used to cross-check the library. Everything here
// is rebuilt from the instance description with naive algorithms; nothing is shared
// with the library beyond the Description type and gmpxx.

#include "bvfrob/io.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;
using DVec = std::vector<Q>;
using DMat = std::vector<DVec>;  // row-major, rows = target

DMat zeros(std::size_t r, std::size_t c);
DMat identity(std::size_t n);
DMat mul(const DMat& a, const DMat& b);
DMat add(const DMat& a, const DMat& b);
DMat sub(const DMat& a, const DMat& b);
DMat scale(const Q& s, const DMat& a);
DVec apply(const DMat& a, const DVec& x);
bool is_zero(const DMat& a);
/// Entries of a library map, read out for dense recomputation.
DMat dense(const bvf::GradedMap& m);
bool is_zero(const DVec& v);
std::size_t rank(DMat a);
Q det(DMat a);

struct Model {
    std::vector<std::string> labels;
    std::vector<int> degree;
    std::size_t unit = 0;
    std::vector<std::vector<DVec>> mult;  // mult[i][j] = e_i e_j
    std::vector<DMat> delta;              // delta[k]
    DVec trace;
    int trace_degree = 0;
    bool has_trace = false;

    std::size_t dim() const { return labels.size(); }
    std::size_t index(const std::string& label) const;
    DVec product(const DVec& a, const DVec& b) const;
    DMat delta_or_zero(std::size_t k) const;
};

/// Naive Chevalley-Eilenberg construction (subsets of generators as sorted index lists).
Model ce_model(const bvf::CEBlock& ce);
/// Tables read straight from the description (explicit forms or generated ones).
Model build(const bvf::Description& d);

/// Exterior algebra on n generators with the top-coefficient trace, no operators.
Model exterior(std::size_t n);
/// Contraction by X_{word[0]} ^ ... ^ X_{word[k-1]}: innermost index applied first.
DMat contraction(const Model& ext, const std::vector<std::size_t>& word);

bool algebra_ok(const Model& m);
/// Iterated graded commutator of D with left multiplications by a_0..a_r, evaluated at 1.
DVec bracket_at_one(const Model& m, const DMat& D, int D_degree, const std::vector<std::size_t>& a);
bool order_at_most(const Model& m, const DMat& D, int D_degree, int r);
/// Degrees, Delta_k(1) = 0, order <= k+1 and sum Delta_i Delta_{k-i} = 0 for k <= 2K.
bool bv_ok(const Model& m);
int top_delta(const Model& m);

/// dim H(A[hbar]/hbar^m, Delta) = m dim H(A, d) for m = 1..levels.
bool free_up_to(const Model& m, int levels);
std::size_t cohomology_dim(const Model& m);

Q pairing(const Model& m, const DVec& a, const DVec& b);

}  // namespace oracle
