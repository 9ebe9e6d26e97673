#pragma once

#include "bvfrob/laurent.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bvf {

/// Graded formal variables tau^0..tau^{mu-1}; odd variables square to zero.
class TauVariables {
public:
    TauVariables() = default;
    TauVariables(std::vector<int> degrees, std::vector<std::string> names = {});

    std::size_t size() const { return degrees_.size(); }
    int degree(std::size_t i) const { return degrees_[i]; }
    bool odd(std::size_t i) const { return is_odd(degrees_[i]); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<int>& degrees() const { return degrees_; }

private:
    std::vector<int> degrees_;
    std::vector<std::string> names_;
};

using TauVarsPtr = std::shared_ptr<const TauVariables>;

/// Canonical monomial: nondecreasing list of variable indices.
using Monomial = std::vector<std::uint16_t>;

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

int monomial_degree(const TauVariables& vars, const Monomial& m);
bool monomial_odd(const TauVariables& vars, const Monomial& m);
std::string monomial_str(const TauVariables& vars, const Monomial& m);

struct SignedMonomial {
    Scalar sign;  // 0 when the product vanishes (repeated odd variable)
    Monomial mono;
};

/// Canonical form of the product a*b (concatenation, then Koszul-sorted).
SignedMonomial monomial_product(const TauVariables& vars, const Monomial& a, const Monomial& b);

/// Right derivative: m = c * (m / tau^i) * tau^i after moving one tau^i to the right end.
SignedMonomial right_derivative(const TauVariables& vars, const Monomial& m, std::size_t i);
/// Left derivative: m = c * tau^i * (m / tau^i) after moving one tau^i to the left end.
SignedMonomial left_derivative(const TauVariables& vars, const Monomial& m, std::size_t i);

/// Formal power series in graded tau variables with coefficients of type C, truncated at
/// tau-order `order()`: coefficients of monomials longer than the order are unknown.
/// Coefficients are stored to the LEFT of the monomial: sum_m c_m tau^m.
template <typename C>
class TauSeries {
public:
    using Terms = std::map<Monomial, C, MonomialLess>;

    TauSeries() = default;
    TauSeries(TauVarsPtr vars, int order) : vars_(std::move(vars)), order_(order) {}

    const TauVarsPtr& vars() const { return vars_; }
    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    Terms& terms() { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Monomial& m, const C& c, const Scalar& s = Scalar(1))
    {
        if (static_cast<int>(m.size()) > order_ || sgn(s) == 0 || (c.is_zero() && c.exact()))
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            C v = c;
            if (s != 1)
                v *= s;
            terms_.emplace(m, std::move(v));
            return;
        }
        if (s == 1) {
            it->second += c;
        } else {
            C v = c;
            v *= s;
            it->second += v;
        }
        if (it->second.is_zero() && it->second.exact())
            terms_.erase(it);
    }

    const C* find(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? nullptr : &it->second;
    }

    /// Part of tau-order exactly n.
    TauSeries homogeneous_part(int n) const
    {
        TauSeries out(vars_, order_);
        for (const auto& [m, c] : terms_)
            if (static_cast<int>(m.size()) == n)
                out.terms_.emplace(m, c);
        return out;
    }

    /// Same terms, declared known up to `order` (the caller vouches for the missing orders).
    TauSeries with_order(int order) const
    {
        TauSeries out(vars_, order);
        for (const auto& [m, c] : terms_)
            if (static_cast<int>(m.size()) <= order)
                out.terms_.emplace(m, c);
        return out;
    }

    TauSeries truncated(int order) const
    {
        TauSeries out(vars_, std::min(order, order_));
        for (const auto& [m, c] : terms_)
            if (static_cast<int>(m.size()) <= out.order_)
                out.terms_.emplace(m, c);
        return out;
    }

    TauSeries& operator+=(const TauSeries& o)
    {
        order_ = std::min(order_, o.order_);
        for (auto it = terms_.begin(); it != terms_.end();)
            it = static_cast<int>(it->first.size()) > order_ ? terms_.erase(it) : std::next(it);
        for (const auto& [m, c] : o.terms_)
            add(m, c);
        return *this;
    }
    TauSeries& operator-=(const TauSeries& o)
    {
        order_ = std::min(order_, o.order_);
        for (const auto& [m, c] : o.terms_)
            add(m, c, Scalar(-1));
        for (auto it = terms_.begin(); it != terms_.end();)
            it = static_cast<int>(it->first.size()) > order_ ? terms_.erase(it) : std::next(it);
        return *this;
    }
    TauSeries& operator*=(const Scalar& s)
    {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    /// Coefficientwise map, e.g. applying an hbar-linear operator.
    template <typename D, typename F>
    TauSeries<D> map(F&& f) const
    {
        TauSeries<D> out(vars_, order_);
        for (const auto& [m, c] : terms_)
            out.add(m, f(c));
        return out;
    }

    /// Right derivative with respect to tau^i (coefficients untouched).
    TauSeries right_derivative(std::size_t i) const
    {
        TauSeries out(vars_, order_ - 1);
        for (const auto& [m, c] : terms_) {
            auto d = bvf::right_derivative(*vars_, m, i);
            if (sgn(d.sign) != 0)
                out.add(d.mono, c, d.sign);
        }
        return out;
    }

    /// Left derivative acting on the monomial part only (no sign from the coefficient).
    TauSeries left_derivative(std::size_t i) const
    {
        TauSeries out(vars_, order_ - 1);
        for (const auto& [m, c] : terms_) {
            auto d = bvf::left_derivative(*vars_, m, i);
            if (sgn(d.sign) != 0)
                out.add(d.mono, c, d.sign);
        }
        return out;
    }

    bool operator==(const TauSeries& o) const { return order_ == o.order_ && terms_ == o.terms_; }

private:
    TauVarsPtr vars_;
    int order_ = 0;
    Terms terms_;
};

using ScalarTau = TauSeries<LaurentScalar>;
using VecTau = TauSeries<LaurentVec>;

/// Product of two series. `coeff_mul(ca, cb, left_monomial_odd)` must return the product
/// of coefficients including the Koszul sign of moving tau^{m_a} past cb.
template <typename R, typename A, typename B, typename F>
TauSeries<R> tau_product(const TauSeries<A>& a, const TauSeries<B>& b, int order, F&& coeff_mul)
{
    const auto& vars = *a.vars();
    TauSeries<R> out(a.vars(), std::min({order, a.order(), b.order()}));
    for (const auto& [ma, ca] : a.terms()) {
        if (static_cast<int>(ma.size()) > out.order())
            continue;
        const bool odd_a = monomial_odd(vars, ma);
        for (const auto& [mb, cb] : b.terms()) {
            if (static_cast<int>(ma.size() + mb.size()) > out.order())
                continue;
            auto p = monomial_product(vars, ma, mb);
            if (sgn(p.sign) == 0)
                continue;
            out.add(p.mono, coeff_mul(ca, cb, odd_a), p.sign);
        }
    }
    return out;
}

/// Scalar-coefficient product (scalars are even, only monomial signs appear).
ScalarTau operator*(const ScalarTau& a, const ScalarTau& b);

/// A scalar series with a single term c * tau^m.
ScalarTau scalar_monomial(TauVarsPtr vars, int order, const Monomial& m, const LaurentScalar& c);

/// Substitute t^i -> phi[i](tau) into a scalar series in t. phi[i] must have the parity of t^i.
ScalarTau substitute(const ScalarTau& f, const std::vector<ScalarTau>& phi, int order);

/// Vector-valued substitution; coefficients stay on the left so no coefficient signs arise.
VecTau substitute(const VecTau& f, const std::vector<ScalarTau>& phi, int order);

/// exp(x) truncated at tau-order `order`; x must have no tau-constant term.
template <typename C, typename Mul>
TauSeries<C> tau_exp(const TauSeries<C>& x, int order, const C& one, Mul&& mul)
{
    for (const auto& [m, c] : x.terms())
        if (m.empty())
            throw MathError("series_exp: argument has a tau-constant term");
    const int n = std::min(order, x.order());
    TauSeries<C> result(x.vars(), n);
    result.add({}, one);
    TauSeries<C> power(x.vars(), n);
    power.add({}, one);
    for (int k = 1; k <= n; ++k) {
        power = tau_product<C>(power, x, n, mul);
        power *= Scalar(1, k);
        if (power.is_zero())
            break;
        result += power;
    }
    return result;
}

/// Multi-variable series inversion: given T(t) = t + O(t^2) (one scalar series per variable),
/// returns phi with T(phi(tau)) = tau up to `order`.
std::vector<ScalarTau> invert_series(const std::vector<ScalarTau>& T, int order);

}  // namespace bvf
