#include "bvfrob/models.hpp"

#include <algorithm>
#include <bit>

namespace bvf {

ExteriorAlgebra::ExteriorAlgebra(std::size_t n, const std::string& prefix) : n_(n)
{
    if (n > 16)
        throw InputError("exterior algebra with more than 16 generators");
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        masks_.push_back(m);
    std::sort(masks_.begin(), masks_.end(), [](std::uint32_t a, std::uint32_t b) {
        int ca = std::popcount(a), cb = std::popcount(b);
        if (ca != cb)
            return ca < cb;
        // lexicographic on the increasing index lists
        for (std::size_t i = 0; i < 32; ++i) {
            bool ia = a & (1u << i), ib = b & (1u << i);
            if (ia != ib)
                return ia;
        }
        return false;
    });
    std::vector<BasisElement> basis;
    for (std::size_t idx = 0; idx < masks_.size(); ++idx) {
        std::uint32_t m = masks_[idx];
        index_[m] = idx;
        std::string label;
        for (std::size_t i = 0; i < n; ++i)
            if (m & (1u << i))
                label += prefix + std::to_string(i + 1);
        basis.push_back({m ? label : "1", std::popcount(m)});
    }
    space_ = std::make_shared<const GradedSpace>(std::move(basis));
}

int ExteriorAlgebra::wedge_sign(std::uint32_t I, std::uint32_t J)
{
    if (I & J)
        return 0;
    int inversions = 0;
    for (std::uint32_t j = J; j; j &= j - 1) {
        int bit = std::countr_zero(j);
        inversions += std::popcount(I >> (bit + 1));
    }
    return (inversions & 1) ? -1 : 1;
}

std::vector<MultEntry> ExteriorAlgebra::mult_entries() const
{
    std::vector<MultEntry> out;
    for (std::size_t a = 0; a < masks_.size(); ++a)
        for (std::size_t b = 0; b < masks_.size(); ++b) {
            int s = wedge_sign(masks_[a], masks_[b]);
            if (s != 0)
                out.push_back({a, b, index(masks_[a] | masks_[b]), Scalar(s)});
        }
    return out;
}

bool Multivector::is_zero() const
{
    for (const auto& [w, c] : terms)
        if (sgn(c) != 0)
            return false;
    return true;
}

std::vector<std::vector<std::vector<Scalar>>> structure_tensor(const CEModel& model)
{
    const std::size_t n = model.n;
    std::vector<std::vector<std::vector<Scalar>>> c(n, std::vector<std::vector<Scalar>>(n, Vec(n, Scalar(0))));
    std::vector<std::vector<std::vector<bool>>> set(n, std::vector<std::vector<bool>>(n, std::vector<bool>(n)));
    for (const auto& b : model.brackets) {
        if (b.i >= n || b.j >= n || b.k >= n)
            throw InputError("bracket index out of range in model '" + model.name + "'");
        if (b.i == b.j) {
            if (sgn(b.c) != 0)
                throw InputError("bracket [X,X] must vanish");
            continue;
        }
        auto put = [&](std::size_t i, std::size_t j, const Scalar& v) {
            if (set[i][j][b.k] && c[i][j][b.k] != v)
                throw InputError("inconsistent bracket entries");
            set[i][j][b.k] = true;
            c[i][j][b.k] = v;
        };
        put(b.i, b.j, b.c);
        put(b.j, b.i, -b.c);
    }
    // Re-index as c[k][i][j].
    std::vector<std::vector<std::vector<Scalar>>> out(n, std::vector<std::vector<Scalar>>(n, Vec(n, Scalar(0))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                out[k][i][j] = c[i][j][k];
    return out;
}

GradedMap ce_differential(const ExteriorAlgebra& ext, const CEModel& model)
{
    if (model.n != ext.generators())
        throw InputError("model and exterior algebra differ in dimension");
    auto c = structure_tensor(model);
    const std::size_t n = model.n;
    // d(e_k) as a list of (mask, coeff).
    std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> de(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (sgn(c[k][i][j]) != 0)
                    de[k].emplace_back((1u << i) | (1u << j), -c[k][i][j]);

    const auto& V = *ext.space();
    GradedMap d(ext.space(), ext.space(), 1);
    for (std::size_t col = 0; col < V.dim(); ++col) {
        std::uint32_t I = ext.mask(col);
        int position = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (!(I & (1u << k)))
                continue;
            std::uint32_t prefix = I & ((1u << k) - 1);
            std::uint32_t suffix = I & ~((2u << k) - 1);
            for (const auto& [m, v] : de[k]) {
                int s1 = ExteriorAlgebra::wedge_sign(prefix, m);
                if (s1 == 0)
                    continue;
                int s2 = ExteriorAlgebra::wedge_sign(prefix | m, suffix);
                if (s2 == 0)
                    continue;
                Scalar coeff = v * s1 * s2 * ((position & 1) ? -1 : 1);
                d.add_to(ext.index(prefix | m | suffix), col, coeff);
            }
            ++position;
        }
    }
    return d;
}

GradedMap contraction(const ExteriorAlgebra& ext, const Multivector& w)
{
    const auto& V = *ext.space();
    std::optional<std::size_t> order;
    for (const auto& [word, c] : w.terms) {
        if (sgn(c) == 0)
            continue;
        if (order && *order != word.size())
            throw InputError("contraction by an inhomogeneous multivector");
        order = word.size();
        for (auto i : word)
            if (i >= ext.generators())
                throw InputError("multivector index out of range");
    }
    GradedMap out(ext.space(), ext.space(), -static_cast<int>(order.value_or(0)));
    for (std::size_t col = 0; col < V.dim(); ++col) {
        for (const auto& [word, c] : w.terms) {
            if (sgn(c) == 0)
                continue;
            std::uint32_t m = ext.mask(col);
            int parity = 0;
            bool alive = true;
            for (auto it = word.rbegin(); it != word.rend() && alive; ++it) {
                std::uint32_t bit = 1u << *it;
                if (!(m & bit)) {
                    alive = false;
                    break;
                }
                parity ^= std::popcount(m & (bit - 1)) & 1;
                m &= ~bit;
            }
            if (alive)
                out.add_to(ext.index(m), col, parity ? -c : c);
        }
    }
    return out;
}

Multivector wedge(const Multivector& u, const Multivector& v)
{
    Multivector out;
    for (const auto& [a, ca] : u.terms)
        for (const auto& [b, cb] : v.terms) {
            std::vector<std::size_t> word = a;
            word.insert(word.end(), b.begin(), b.end());
            out.terms.emplace_back(std::move(word), ca * cb);
        }
    return out;
}

Vec top_trace(const ExteriorAlgebra& ext) { return unit_vec(ext.space()->dim(), ext.top()); }

Matrix hodge_star(const ExteriorAlgebra& ext)
{
    const std::size_t N = ext.space()->dim();
    const std::uint32_t full = (1u << ext.generators()) - 1;
    Matrix star(N, N);
    for (std::size_t col = 0; col < N; ++col) {
        std::uint32_t I = ext.mask(col);
        star(ext.index(full & ~I), col) = ExteriorAlgebra::wedge_sign(I, full & ~I);
    }
    return star;
}

InnerProduct star_inner_product(const ExteriorAlgebra& ext, const BVAlgebra& A)
{
    const std::size_t N = A.dim();
    Matrix star = hodge_star(ext);
    Vec tr = top_trace(ext);
    Matrix gram(N, N);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            if (A.space()->degree(a) != A.space()->degree(b))
                continue;
            gram(a, b) = dot(tr, A.multiply(unit_vec(N, a), star.column(b)));
        }
    return InnerProduct::from_full(A.space(), gram, "star");
}

BVAlgebra generate_jacobi_model(const CEModel& model, const Multivector& pi, const Multivector& eta)
{
    for (const auto& [w, c] : pi.terms)
        if (w.size() != 2)
            throw InputError("pi must be a bivector");
    for (const auto& [w, c] : eta.terms)
        if (w.size() != 1)
            throw InputError("eta must be a vector");
    ExteriorAlgebra ext(model.n);
    GradedMap d = ce_differential(ext, model);
    std::vector<GradedMap> deltas{d};
    if (!pi.is_zero()) {
        GradedMap ip = contraction(ext, pi);
        deltas.push_back(ip * d - d * ip);
        if (!eta.is_zero())
            deltas.push_back(contraction(ext, wedge(eta, pi)));
    }
    return BVAlgebra(ext.space(), ext.index(0), ext.mult_entries(), std::move(deltas));
}

BVAlgebra contractible_model()
{
    auto V = std::make_shared<const GradedSpace>(
        std::vector<BasisElement>{{"1", 0}, {"x", 0}, {"y", 1}});
    std::vector<MultEntry> mult{{0, 0, 0, Scalar(1)}, {0, 1, 1, Scalar(1)}, {1, 0, 1, Scalar(1)},
                                {0, 2, 2, Scalar(1)}, {2, 0, 2, Scalar(1)}};
    GradedMap d(V, V, 1);
    d.set(2, 1, Scalar(1));
    return BVAlgebra(V, 0, mult, {d});
}

}  // namespace bvf
