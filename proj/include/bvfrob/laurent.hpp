#pragma once

#include "bvfrob/graded.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bvf {

/// Raised when a coefficient outside a trusted window is requested.
class WindowError : public MathError {
public:
    using MathError::MathError;
};

/// Precision value meaning "exact": every coefficient is known.
inline constexpr int kExact = std::numeric_limits<int>::max() / 4;

inline int prec_add(int a, int b)
{
    if (a >= kExact || b >= kExact)
        return kExact;
    return a + b;
}

inline std::string prec_str(int p) { return p >= kExact ? std::string("exact") : std::to_string(p); }

namespace detail {

inline bool coeff_is_zero(const Scalar& x) { return sgn(x) == 0; }
inline bool coeff_is_zero(const Vec& x) { return is_zero(x); }

template <typename T>
T coeff_zero(std::size_t dim);
template <>
inline Scalar coeff_zero<Scalar>(std::size_t) { return Scalar(0); }
template <>
inline Vec coeff_zero<Vec>(std::size_t dim) { return Vec(dim, Scalar(0)); }

inline void coeff_add(Scalar& a, const Scalar& b) { a += b; }
inline void coeff_add(Vec& a, const Vec& b)
{
    for (std::size_t i = 0; i < b.size(); ++i)
        if (sgn(b[i]) != 0)
            a[i] += b[i];
}
inline void coeff_scale(Scalar& a, const Scalar& s) { a *= s; }
inline void coeff_scale(Vec& a, const Scalar& s)
{
    for (auto& x : a)
        x *= s;
}

}  // namespace detail

/// Truncated Laurent series in hbar. Every exponent below the stored range is exactly zero;
/// exponents above `precision()` are unknown and reading them throws WindowError.
template <typename T>
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(std::size_t dim, int precision = kExact) : dim_(dim), hi_(precision) {}

    static Laurent constant(T value, std::size_t dim, int exponent = 0)
    {
        Laurent s(dim);
        s.add_term(exponent, std::move(value));
        return s;
    }

    std::size_t dim() const { return dim_; }
    int precision() const { return hi_; }
    bool exact() const { return hi_ >= kExact; }
    const std::map<int, T>& terms() const { return terms_; }

    /// Lowest exponent that may be nonzero (precision + 1 for a series known to be O(hbar^{hi+1})).
    int valuation() const
    {
        if (!terms_.empty())
            return terms_.begin()->first;
        return hi_ >= kExact ? kExact : hi_ + 1;
    }
    std::optional<int> top_exponent() const
    {
        if (terms_.empty())
            return std::nullopt;
        return terms_.rbegin()->first;
    }

    bool is_zero() const { return terms_.empty(); }

    T coeff(int e) const
    {
        if (e > hi_)
            throw WindowError("hbar^" + std::to_string(e) + " is outside the trusted window (precision " +
                              prec_str(hi_) + ")");
        auto it = terms_.find(e);
        return it == terms_.end() ? detail::coeff_zero<T>(dim_) : it->second;
    }

    void add_term(int e, const T& value)
    {
        if (e > hi_ || detail::coeff_is_zero(value))
            return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, value);
            return;
        }
        detail::coeff_add(it->second, value);
        if (detail::coeff_is_zero(it->second))
            terms_.erase(it);
    }

    void set_precision(int p)
    {
        hi_ = std::min(hi_, p);
        terms_.erase(terms_.upper_bound(hi_), terms_.end());
    }

    Laurent& operator+=(const Laurent& o)
    {
        if (dim_ == 0)
            dim_ = o.dim_;
        set_precision(o.hi_);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o)
    {
        Laurent neg = o;
        neg *= Scalar(-1);
        return *this += neg;
    }
    Laurent& operator*=(const Scalar& s)
    {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            detail::coeff_scale(c, s);
        return *this;
    }

    /// Multiply by hbar^k.
    Laurent shifted(int k) const
    {
        Laurent out(dim_, prec_add(hi_, k));
        for (const auto& [e, c] : terms_)
            out.terms_.emplace(e + k, c);
        return out;
    }

    /// The bar involution hbar -> -hbar.
    Laurent bar() const
    {
        Laurent out = *this;
        for (auto& [e, c] : out.terms_)
            if (is_odd(e))
                detail::coeff_scale(c, Scalar(-1));
        return out;
    }

    /// Part with exponents >= 0 (projection onto the power-series lattice).
    Laurent nonnegative() const
    {
        Laurent out(dim_, hi_);
        for (auto it = terms_.lower_bound(0); it != terms_.end(); ++it)
            out.terms_.emplace(it->first, it->second);
        return out;
    }
    Laurent negative() const
    {
        Laurent out(dim_, hi_);
        for (auto it = terms_.begin(); it != terms_.end() && it->first < 0; ++it)
            out.terms_.emplace(it->first, it->second);
        return out;
    }

    /// Apply a coefficientwise map (e.g. a linear operator).
    template <typename U, typename F>
    Laurent<U> map(std::size_t dim, F&& f) const
    {
        Laurent<U> out(dim, hi_);
        for (const auto& [e, c] : terms_)
            out.add_term(e, f(c));
        return out;
    }

    bool operator==(const Laurent& o) const { return hi_ == o.hi_ && terms_ == o.terms_; }

private:
    std::size_t dim_ = 0;
    int hi_ = kExact;
    std::map<int, T> terms_;
};

using LaurentScalar = Laurent<Scalar>;
using LaurentVec = Laurent<Vec>;

template <typename T>
Laurent<T> operator+(Laurent<T> a, const Laurent<T>& b)
{
    return a += b;
}
template <typename T>
Laurent<T> operator-(Laurent<T> a, const Laurent<T>& b)
{
    return a -= b;
}
template <typename T>
Laurent<T> operator*(const Scalar& s, Laurent<T> a)
{
    return a *= s;
}

/// Window of a product: coefficients are trusted up to min(hi_a + val_b, hi_b + val_a).
inline int product_precision(int hi_a, int val_a, int hi_b, int val_b)
{
    return std::min(prec_add(hi_a, val_b), prec_add(hi_b, val_a));
}

/// Cauchy product with a bilinear coefficient product f(T1, T2) -> R.
template <typename R, typename T1, typename T2, typename F>
Laurent<R> laurent_product(const Laurent<T1>& a, const Laurent<T2>& b, std::size_t dim, F&& f)
{
    Laurent<R> out(dim, product_precision(a.precision(), a.valuation(), b.precision(), b.valuation()));
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms())
            if (ea + eb <= out.precision())
                out.add_term(ea + eb, f(ca, cb));
    return out;
}

inline LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b)
{
    return laurent_product<Scalar>(a, b, 1, [](const Scalar& x, const Scalar& y) { return x * y; });
}

/// Scalar series times vector series.
inline LaurentVec operator*(const LaurentScalar& a, const LaurentVec& b)
{
    return laurent_product<Vec>(a, b, b.dim(), [](const Scalar& x, const Vec& y) { return x * y; });
}

/// Operator-valued power series sum_k hbar^k O_k between fixed spaces. The series is
/// homogeneous of `total_degree`, so O_k has degree total_degree - 2k.
class OpSeries {
public:
    OpSeries() = default;
    OpSeries(SpacePtr source, SpacePtr target, int total_degree, std::vector<GradedMap> terms,
             int precision = kExact);

    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    int total_degree() const { return total_degree_; }
    const std::vector<GradedMap>& terms() const { return terms_; }
    int precision() const { return hi_; }
    bool exact() const { return hi_ >= kExact; }

    /// Coefficient of hbar^k (zero past the stored terms; throws WindowError past the precision).
    GradedMap coeff(int k) const;
    int valuation() const;
    bool is_zero() const { return terms_.empty(); }

    LaurentVec apply(const LaurentVec& x) const;

    /// Single term at hbar^0.
    static OpSeries constant(const GradedMap& m);
    static OpSeries identity(const SpacePtr& space) { return constant(GradedMap::identity(space)); }
    /// Drop terms above hbar^M and mark the precision accordingly (no-op if already tighter).
    OpSeries truncated(int M) const;
    /// Highest stored hbar exponent, -1 for the zero series.
    int top_exponent() const { return static_cast<int>(terms_.size()) - 1; }

private:
    SpacePtr source_;
    SpacePtr target_;
    int total_degree_ = 0;
    std::vector<GradedMap> terms_;
    int hi_ = kExact;
};

OpSeries compose(const OpSeries& f, const OpSeries& g);
OpSeries operator+(const OpSeries& f, const OpSeries& g);
OpSeries operator-(const OpSeries& f, const OpSeries& g);

}  // namespace bvf
