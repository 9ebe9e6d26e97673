#pragma once

#include "bvfrob/graded.hpp"
#include "bvfrob/report.hpp"

#include <string>

namespace bvf {

/// "c1*label1 + c2*label2" or "0".
std::string vec_str(const GradedSpace& V, const Vec& v);

/// Counts the n*m entries of `diff` as cases and records every nonzero entry as a violation.
void expect_zero(Check& check, const GradedMap& diff, const std::string& what);

}  // namespace bvf
