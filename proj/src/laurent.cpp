#include "bvfrob/laurent.hpp"

namespace bvf {

OpSeries::OpSeries(SpacePtr source, SpacePtr target, int total_degree, std::vector<GradedMap> terms,
                   int precision)
    : source_(std::move(source)), target_(std::move(target)), total_degree_(total_degree),
      terms_(std::move(terms)), hi_(precision)
{
    if (hi_ < kExact && static_cast<int>(terms_.size()) > hi_ + 1)
        terms_.resize(static_cast<std::size_t>(std::max(hi_ + 1, 0)), GradedMap());
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].rows() != target_->dim() || terms_[k].cols() != source_->dim())
            throw MathError("operator series term has the wrong shape");
        if (!terms_[k].is_zero() && terms_[k].degree() != total_degree_ - 2 * static_cast<int>(k))
            throw MathError("operator series term hbar^" + std::to_string(k) + " has inconsistent degree");
    }
    while (!terms_.empty() && terms_.back().is_zero())
        terms_.pop_back();
}

GradedMap OpSeries::coeff(int k) const
{
    if (k > hi_)
        throw WindowError("operator coefficient hbar^" + std::to_string(k) + " is beyond precision " +
                          prec_str(hi_));
    if (k >= 0 && static_cast<std::size_t>(k) < terms_.size())
        return terms_[k];
    return GradedMap::zero(source_, target_, total_degree_ - 2 * k);
}

int OpSeries::valuation() const
{
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (!terms_[k].is_zero())
            return static_cast<int>(k);
    return hi_ >= kExact ? kExact : hi_ + 1;
}

LaurentVec OpSeries::apply(const LaurentVec& x) const
{
    LaurentVec out(target_->dim(), product_precision(hi_, valuation(), x.precision(), x.valuation()));
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].is_zero())
            continue;
        for (const auto& [e, v] : x.terms())
            if (e + static_cast<int>(k) <= out.precision())
                out.add_term(e + static_cast<int>(k), terms_[k].apply(v));
    }
    return out;
}

OpSeries OpSeries::constant(const GradedMap& m)
{
    return OpSeries(m.source(), m.target(), m.degree(), {m});
}

OpSeries OpSeries::truncated(int M) const
{
    if (M >= hi_)
        return *this;
    std::vector<GradedMap> t(terms_.begin(), terms_.begin() + std::min<std::size_t>(terms_.size(), std::max(M + 1, 0)));
    return OpSeries(source_, target_, total_degree_, std::move(t), M);
}

OpSeries compose(const OpSeries& f, const OpSeries& g)
{
    int hi = product_precision(f.precision(), f.valuation(), g.precision(), g.valuation());
    std::size_t n = f.terms().size() + g.terms().size();
    if (hi < kExact)
        n = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(hi + 1, 0)));
    std::vector<GradedMap> terms;
    for (std::size_t k = 0; k < n; ++k) {
        GradedMap acc = GradedMap::zero(g.source(), f.target(), f.total_degree() + g.total_degree() - 2 * int(k));
        for (std::size_t i = 0; i <= k; ++i) {
            if (i >= f.terms().size() || k - i >= g.terms().size())
                continue;
            if (f.terms()[i].is_zero() || g.terms()[k - i].is_zero())
                continue;
            acc += f.terms()[i] * g.terms()[k - i];
        }
        terms.push_back(std::move(acc));
    }
    return OpSeries(g.source(), f.target(), f.total_degree() + g.total_degree(), std::move(terms), hi);
}

static OpSeries combine(const OpSeries& f, const OpSeries& g, const Scalar& sign)
{
    if (f.source()->dim() != g.source()->dim() || f.target()->dim() != g.target()->dim())
        throw MathError("operator series shape mismatch");
    if (!f.is_zero() && !g.is_zero() && f.total_degree() != g.total_degree())
        throw MathError("adding operator series of different degrees");
    int degree = f.is_zero() ? g.total_degree() : f.total_degree();
    int hi = std::min(f.precision(), g.precision());
    std::size_t n = std::max(f.terms().size(), g.terms().size());
    std::vector<GradedMap> terms;
    for (std::size_t k = 0; k < n; ++k) {
        GradedMap acc = GradedMap::zero(f.source(), f.target(), degree - 2 * int(k));
        if (k < f.terms().size())
            acc += f.terms()[k];
        if (k < g.terms().size())
            acc += sign * g.terms()[k];
        terms.push_back(std::move(acc));
    }
    return OpSeries(f.source(), f.target(), degree, std::move(terms), hi);
}

OpSeries operator+(const OpSeries& f, const OpSeries& g) { return combine(f, g, Scalar(1)); }
OpSeries operator-(const OpSeries& f, const OpSeries& g) { return combine(f, g, Scalar(-1)); }

}  // namespace bvf
