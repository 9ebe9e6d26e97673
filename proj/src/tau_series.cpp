#include "bvfrob/tau_series.hpp"

#include <algorithm>
#include <sstream>

namespace bvf {

TauVariables::TauVariables(std::vector<int> degrees, std::vector<std::string> names)
    : degrees_(std::move(degrees)), names_(std::move(names))
{
    if (names_.empty())
        for (std::size_t i = 0; i < degrees_.size(); ++i)
            names_.push_back("t" + std::to_string(i));
    if (names_.size() != degrees_.size())
        throw MathError("tau variable names and degrees differ in length");
}

int monomial_degree(const TauVariables& vars, const Monomial& m)
{
    int d = 0;
    for (auto i : m)
        d += vars.degree(i);
    return d;
}

bool monomial_odd(const TauVariables& vars, const Monomial& m)
{
    bool odd = false;
    for (auto i : m)
        odd ^= vars.odd(i);
    return odd;
}

std::string monomial_str(const TauVariables& vars, const Monomial& m)
{
    if (m.empty())
        return "1";
    std::ostringstream os;
    std::size_t k = 0;
    while (k < m.size()) {
        std::size_t j = k;
        while (j < m.size() && m[j] == m[k])
            ++j;
        if (k > 0)
            os << "*";
        os << vars.name(m[k]);
        if (j - k > 1)
            os << "^" << (j - k);
        k = j;
    }
    return os.str();
}

SignedMonomial monomial_product(const TauVariables& vars, const Monomial& a, const Monomial& b)
{
    SignedMonomial out{Scalar(1), {}};
    int parity = 0;
    for (auto y : b) {
        if (!vars.odd(y))
            continue;
        for (auto x : a) {
            if (x == y)
                return {Scalar(0), {}};
            if (x > y && vars.odd(x))
                parity ^= 1;
        }
    }
    out.mono.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.mono));
    out.sign = sign_of(parity);
    return out;
}

SignedMonomial right_derivative(const TauVariables& vars, const Monomial& m, std::size_t i)
{
    auto first = std::find(m.begin(), m.end(), i);
    if (first == m.end())
        return {Scalar(0), {}};
    auto last = std::upper_bound(m.begin(), m.end(), static_cast<std::uint16_t>(i));
    SignedMonomial out;
    out.mono.assign(m.begin(), first);
    out.mono.insert(out.mono.end(), std::next(first), m.end());
    if (!vars.odd(i)) {
        out.sign = Scalar(static_cast<long>(last - first));
        return out;
    }
    int parity = 0;
    for (auto it = last; it != m.end(); ++it)
        parity ^= vars.odd(*it);
    out.sign = sign_of(parity);
    return out;
}

SignedMonomial left_derivative(const TauVariables& vars, const Monomial& m, std::size_t i)
{
    auto first = std::find(m.begin(), m.end(), i);
    if (first == m.end())
        return {Scalar(0), {}};
    auto last = std::upper_bound(m.begin(), m.end(), static_cast<std::uint16_t>(i));
    SignedMonomial out;
    out.mono.assign(m.begin(), first);
    out.mono.insert(out.mono.end(), std::next(first), m.end());
    if (!vars.odd(i)) {
        out.sign = Scalar(static_cast<long>(last - first));
        return out;
    }
    int parity = 0;
    for (auto it = m.begin(); it != first; ++it)
        parity ^= vars.odd(*it);
    out.sign = sign_of(parity);
    return out;
}

ScalarTau operator*(const ScalarTau& a, const ScalarTau& b)
{
    return tau_product<LaurentScalar>(a, b, std::min(a.order(), b.order()),
                                      [](const LaurentScalar& x, const LaurentScalar& y, bool) { return x * y; });
}

ScalarTau scalar_monomial(TauVarsPtr vars, int order, const Monomial& m, const LaurentScalar& c)
{
    ScalarTau s(std::move(vars), order);
    s.add(m, c);
    return s;
}

namespace {

void check_substitution(const std::vector<ScalarTau>& phi, std::size_t nvars)
{
    if (phi.size() != nvars)
        throw MathError("substitution needs one series per variable");
    for (const auto& p : phi)
        for (const auto& [m, c] : p.terms())
            if (m.empty())
                throw MathError("substituted series must have no constant term");
}

// Products phi^{m} for every monomial prefix, memoized.
class PowerCache {
public:
    PowerCache(const std::vector<ScalarTau>& phi, int order) : phi_(phi), order_(order) {}

    const ScalarTau& get(const Monomial& m)
    {
        auto it = cache_.find(m);
        if (it != cache_.end())
            return it->second;
        ScalarTau value(phi_.front().vars(), order_);
        if (m.empty()) {
            value.add({}, LaurentScalar::constant(Scalar(1), 1));
        } else {
            Monomial prefix(m.begin(), m.end() - 1);
            value = get(prefix) * phi_[m.back()].truncated(order_);
        }
        return cache_.emplace(m, std::move(value)).first->second;
    }

private:
    const std::vector<ScalarTau>& phi_;
    int order_;
    std::map<Monomial, ScalarTau, MonomialLess> cache_;
};

}  // namespace

ScalarTau substitute(const ScalarTau& f, const std::vector<ScalarTau>& phi, int order)
{
    check_substitution(phi, f.vars()->size());
    const int n = std::min(order, f.order());
    ScalarTau out(phi.front().vars(), n);
    PowerCache powers(phi, n);
    for (const auto& [m, c] : f.terms()) {
        if (static_cast<int>(m.size()) > n)
            continue;
        for (const auto& [mm, cc] : powers.get(m).terms())
            out.add(mm, c * cc);
    }
    return out;
}

VecTau substitute(const VecTau& f, const std::vector<ScalarTau>& phi, int order)
{
    check_substitution(phi, f.vars()->size());
    const int n = std::min(order, f.order());
    VecTau out(phi.front().vars(), n);
    PowerCache powers(phi, n);
    for (const auto& [m, c] : f.terms()) {
        if (static_cast<int>(m.size()) > n)
            continue;
        for (const auto& [mm, cc] : powers.get(m).terms())
            out.add(mm, cc * c);
    }
    return out;
}

std::vector<ScalarTau> invert_series(const std::vector<ScalarTau>& T, int order)
{
    const std::size_t mu = T.size();
    if (mu == 0)
        return {};
    auto vars = T.front().vars();
    for (std::size_t i = 0; i < mu; ++i) {
        for (const auto& [m, c] : T[i].terms()) {
            if (m.empty())
                throw MathError("series inversion: constant term present");
            if (m.size() == 1) {
                LaurentScalar expect = LaurentScalar::constant(Scalar(m[0] == i ? 1 : 0), 1);
                if (!(c == expect))
                    throw MathError("series inversion: linear part is not the identity");
            }
        }
        if (!T[i].find({static_cast<std::uint16_t>(i)}))
            throw MathError("series inversion: linear part is not the identity");
    }
    std::vector<ScalarTau> phi;
    for (std::size_t i = 0; i < mu; ++i)
        phi.push_back(scalar_monomial(vars, order, {static_cast<std::uint16_t>(i)},
                                      LaurentScalar::constant(Scalar(1), 1)));
    for (int n = 2; n <= order; ++n) {
        for (std::size_t i = 0; i < mu; ++i) {
            ScalarTau composed = substitute(T[i], phi, n);
            // composed = tau^i + (order-n error); remove the error.
            phi[i] -= composed.homogeneous_part(n).with_order(order);
        }
    }
    return phi;
}

}  // namespace bvf
