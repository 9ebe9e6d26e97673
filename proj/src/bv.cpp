#include "bvfrob/bv.hpp"
#include "bvfrob/checks.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace bvf {

BVAlgebra::BVAlgebra(SpacePtr space, std::size_t unit, const std::vector<MultEntry>& mult,
                     std::vector<GradedMap> deltas)
    : space_(std::move(space)), unit_(unit), deltas_(std::move(deltas))
{
    const std::size_t n = space_->dim();
    if (unit_ >= n)
        throw InputError("unit index out of range");
    if (space_->degree(unit_) != 0)
        throw InputError("unit '" + space_->label(unit_) + "' must have degree 0");
    for (std::size_t i = 0; i < n; ++i)
        left_.emplace_back(space_, space_, space_->degree(i));
    for (const auto& e : mult) {
        if (e.i >= n || e.j >= n || e.k >= n)
            throw InputError("multiplication entry index out of range");
        if (space_->degree(e.k) != space_->degree(e.i) + space_->degree(e.j))
            throw InputError("multiplication entry " + space_->label(e.i) + "*" + space_->label(e.j) + " -> " +
                             space_->label(e.k) + " breaks degree additivity");
        left_[e.i].add_to(e.k, e.j, e.coeff);
    }
    if (deltas_.empty())
        deltas_.push_back(GradedMap::zero(space_, space_, 1));
    for (std::size_t k = 0; k < deltas_.size(); ++k) {
        auto& op = deltas_[k];
        if (op.rows() != n || op.cols() != n)
            throw InputError("delta_" + std::to_string(k) + " has the wrong shape");
        if (op.is_zero())
            op = GradedMap::zero(space_, space_, 1 - 2 * static_cast<int>(k));
    }
    while (deltas_.size() > 1 && deltas_.back().is_zero())
        deltas_.pop_back();
}

int BVAlgebra::K() const { return static_cast<int>(deltas_.size()) - 1; }

GradedMap BVAlgebra::delta(int k) const
{
    if (k >= 0 && k < static_cast<int>(deltas_.size()))
        return deltas_[k];
    return GradedMap::zero(space_, space_, 1 - 2 * k);
}

GradedMap BVAlgebra::left_mult(const Vec& a) const
{
    auto deg = space_->degree_of(a);
    if (!deg) {
        if (is_zero(a))
            return GradedMap::zero(space_, space_, 0);
        throw MathError("left multiplication by an inhomogeneous element");
    }
    GradedMap out = GradedMap::zero(space_, space_, *deg);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0)
            out += a[i] * left_[i];
    return out;
}

Vec BVAlgebra::multiply(const Vec& a, const Vec& b) const
{
    Vec out = zero_vec(dim());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0)
            continue;
        axpy(out, a[i], left_[i].apply(b));
    }
    return out;
}

std::vector<MultEntry> BVAlgebra::mult_entries() const
{
    std::vector<MultEntry> out;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t k = 0; k < dim(); ++k)
            for (const auto& [j, c] : left_[i].row(k))
                out.push_back({i, j, k, c});
    std::sort(out.begin(), out.end(), [](const MultEntry& a, const MultEntry& b) {
        return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    });
    return out;
}

BVAlgebra BVAlgebra::with_delta(int k, GradedMap op) const
{
    BVAlgebra out = *this;
    if (k < 0)
        throw MathError("negative operator index");
    while (static_cast<int>(out.deltas_.size()) <= k)
        out.deltas_.push_back(GradedMap::zero(space_, space_, 1 - 2 * static_cast<int>(out.deltas_.size())));
    out.deltas_[k] = std::move(op);
    while (out.deltas_.size() > 1 && out.deltas_.back().is_zero())
        out.deltas_.pop_back();
    return out;
}


Report validate_algebra(const BVAlgebra& A)
{
    Report rep;
    const auto& V = *A.space();
    const std::size_t n = A.dim();
    const std::size_t u = A.unit();

    auto& unit = rep.add("unitality");
    for (std::size_t j = 0; j < n; ++j) {
        ++unit.cases;
        Vec e = unit_vec(n, j);
        if (A.multiply_basis(u, j) != e)
            unit.fail("1*" + V.label(j) + " = " + vec_str(V, A.multiply_basis(u, j)));
        if (A.multiply_basis(j, u) != e)
            unit.fail(V.label(j) + "*1 = " + vec_str(V, A.multiply_basis(j, u)));
    }

    auto& comm = rep.add("graded_commutativity");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            ++comm.cases;
            Vec ab = A.multiply_basis(i, j);
            Vec ba = A.multiply_basis(j, i);
            if (ab != sign_of(V.degree(i) * V.degree(j)) * ba)
                comm.fail("(" + V.label(i) + "," + V.label(j) + ")");
        }
    }

    auto& assoc = rep.add("associativity");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec ij = A.multiply_basis(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                ++assoc.cases;
                Vec lhs = A.multiply(ij, unit_vec(n, k));
                Vec rhs = A.left_mult(i).apply(A.multiply_basis(j, k));
                if (lhs != rhs)
                    assoc.fail("(" + V.label(i) + "," + V.label(j) + "," + V.label(k) + ")");
            }
        }
    }
    return rep;
}

namespace {

// Depth-first search over nondecreasing tuples of non-unit basis indices.
bool commutators_vanish(const BVAlgebra& A, const GradedMap& X, std::size_t start, int remaining)
{
    if (X.is_zero())
        return true;
    if (remaining == 0)
        return false;
    for (std::size_t a = start; a < A.dim(); ++a) {
        if (a == A.unit() || A.left_mult(a).is_zero())
            continue;
        GradedMap next = graded_commutator(X, A.left_mult(a));
        if (!commutators_vanish(A, next, a, remaining - 1))
            return false;
    }
    return true;
}

}  // namespace

bool operator_order(const BVAlgebra& A, const GradedMap& D, int r)
{
    if (r < 0)
        throw MathError("operator_order: negative order");
    return commutators_vanish(A, D, 0, r + 1);
}

Report validate_bv(const BVAlgebra& A, int k_check)
{
    if (k_check < 0)
        k_check = 2 * A.K();
    Report rep;
    const Vec one = A.unit_vector();
    for (int k = 0; k <= k_check; ++k) {
        const std::string tag = "[" + std::to_string(k) + "]";
        GradedMap Dk = A.delta(k);

        auto& deg = rep.add("degree" + tag);
        ++deg.cases;
        if (!Dk.is_zero() && Dk.degree() != 1 - 2 * k)
            deg.fail("delta_" + std::to_string(k) + " has degree " + std::to_string(Dk.degree()));

        auto& kills = rep.add("kills_unit" + tag);
        ++kills.cases;
        if (!is_zero(Dk.apply(one)))
            kills.fail("delta_" + std::to_string(k) + "(1) = " + vec_str(*A.space(), Dk.apply(one)));

        auto& ord = rep.add("order" + tag);
        ++ord.cases;
        if (!operator_order(A, Dk, k + 1))
            ord.fail("delta_" + std::to_string(k) + " is not of order <= " + std::to_string(k + 1));

        auto& rel = rep.add("relation" + tag);
        GradedMap sum = GradedMap::zero(A.space(), A.space(), 2 - 2 * k);
        for (int i = 0; i <= k; ++i) {
            GradedMap Di = A.delta(i);
            GradedMap Dj = A.delta(k - i);
            if (Di.is_zero() || Dj.is_zero())
                continue;
            sum += Di * Dj;
        }
        expect_zero(rel, sum, "relation k=" + std::to_string(k));
    }
    return rep;
}

OpSeries delta_total(const BVAlgebra& A, int M)
{
    std::vector<GradedMap> terms;
    for (int k = 0; k <= std::min(A.K(), M); ++k)
        terms.push_back(A.delta(k));
    return OpSeries(A.space(), A.space(), 1, std::move(terms), M >= A.K() ? kExact : M);
}

OpSeries delta_perturbation(const BVAlgebra& A, int M)
{
    std::vector<GradedMap> terms{GradedMap::zero(A.space(), A.space(), 1)};
    for (int k = 1; k <= std::min(A.K(), M); ++k)
        terms.push_back(A.delta(k));
    return OpSeries(A.space(), A.space(), 1, std::move(terms), M >= A.K() ? kExact : M);
}

}  // namespace bvf
