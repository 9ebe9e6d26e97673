#include "bvfrob/checks.hpp"

#include <sstream>

namespace bvf {

std::string vec_str(const GradedSpace& V, const Vec& v)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << v[i].get_str() << "*" << V.label(i);
    }
    return first ? "0" : os.str();
}

void expect_zero(Check& check, const GradedMap& diff, const std::string& what)
{
    check.cases += diff.rows() * diff.cols();
    for (std::size_t r = 0; r < diff.rows(); ++r)
        for (const auto& [c, v] : diff.row(r))
            check.fail(what + " entry (" + diff.target()->label(r) + ", " + diff.source()->label(c) +
                       ") = " + v.get_str());
}

}  // namespace bvf
