#pragma once

#include "bvfrob/scalar.hpp"

#include <vector>

namespace bvf {

/// Sign of reordering graded elements x_0..x_{n-1} into x_{perm[0]}..x_{perm[n-1]}:
/// (-1)^(sum over inverted pairs of the product of their degrees).
/// Throws MathError on a length mismatch or an invalid permutation.
Scalar koszul_sign(const std::vector<int>& permutation, const std::vector<int>& degrees);

}  // namespace bvf
