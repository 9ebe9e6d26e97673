#include "bvfrob/qme.hpp"

namespace bvf {

VecTau TauAlgebra::multiply(const VecTau& x, const VecTau& y, int order) const
{
    const auto& V = *A_.space();
    const std::size_t n = A_.dim();
    return tau_product<LaurentVec>(x, y, order, [&](const LaurentVec& ca, const LaurentVec& cb, bool odd_a) {
        return laurent_product<Vec>(ca, cb, n, [&](const Vec& a, const Vec& b) {
            if (!odd_a)
                return A_.multiply(a, b);
            Vec signed_b = b;
            for (std::size_t j = 0; j < n; ++j)
                if (V.degree(j) & 1)
                    signed_b[j] = -signed_b[j];
            return A_.multiply(a, signed_b);
        });
    });
}

VecTau TauAlgebra::exp(const VecTau& x, int order) const
{
    const auto& V = *A_.space();
    const std::size_t n = A_.dim();
    LaurentVec unit = LaurentVec::constant(A_.unit_vector(), n);
    return tau_exp(x, order, unit, [&](const LaurentVec& ca, const LaurentVec& cb, bool odd_a) {
        return laurent_product<Vec>(ca, cb, n, [&](const Vec& a, const Vec& b) {
            if (!odd_a)
                return A_.multiply(a, b);
            Vec signed_b = b;
            for (std::size_t j = 0; j < n; ++j)
                if (V.degree(j) & 1)
                    signed_b[j] = -signed_b[j];
            return A_.multiply(a, signed_b);
        });
    });
}

VecTau TauAlgebra::apply(const OpSeries& op, const VecTau& x) const
{
    return x.map<LaurentVec>([&](const LaurentVec& c) { return op.apply(c); });
}

VecTau TauAlgebra::shift(const VecTau& x, int k)
{
    return x.map<LaurentVec>([&](const LaurentVec& c) { return c.shifted(k); });
}

VecTau TauAlgebra::one(int order) const
{
    VecTau out(vars_, order);
    out.add({}, LaurentVec::constant(A_.unit_vector(), A_.dim()));
    return out;
}

TauVarsPtr tau_variables(const GradedSpace& H)
{
    std::vector<int> degrees;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < H.dim(); ++i) {
        degrees.push_back(2 - H.degree(i));
        names.push_back("t[" + H.label(i) + "]");
    }
    return std::make_shared<const TauVariables>(std::move(degrees), std::move(names));
}

VecTau qme_residual(const BVAlgebra& A, const VecTau& Gamma, int N, int)
{
    for (const auto& [m, c] : Gamma.terms())
        if (m.empty())
            throw MathError("qme_residual: Gamma has a tau-constant term");
    TauAlgebra T(A, Gamma.vars());
    VecTau E = T.exp(TauAlgebra::shift(Gamma, -1), N);
    return T.apply(delta_total(A, A.K()), E);
}

namespace {

VecTau linear_part(const GoodBasis& gb, const TauVarsPtr& vars, int N)
{
    VecTau out(vars, N);
    for (std::size_t i = 0; i < gb.alpha.size(); ++i)
        out.add({static_cast<std::uint16_t>(i)}, gb.alpha[i]);
    return out;
}

std::string where(const TauVariables& vars, const Monomial& m, int e)
{
    return "tau " + monomial_str(vars, m) + " hbar^" + std::to_string(e);
}

}  // namespace

QmeSolution solve_qme(const BVAlgebra& A, const PerturbedRetract& PR, const GoodBasis& gb, const GradedSpace& H,
                      int N, int M)
{
    QmeSolution sol;
    sol.mu = H.dim();
    sol.N = N;
    sol.M = M;
    sol.vars = tau_variables(H);
    TauAlgebra T(A, sol.vars);
    const OpSeries Delta = delta_total(A, A.K());

    auto& pre = sol.report.add("alpha_closed");
    for (std::size_t i = 0; i < gb.alpha.size(); ++i) {
        ++pre.cases;
        LaurentVec r = Delta.apply(gb.alpha[i]);
        for (const auto& [e, v] : r.terms())
            if (e <= M)
                pre.fail("Delta alpha_" + H.label(i) + " at hbar^" + std::to_string(e));
    }

    sol.orders.resize(N + 1, VecTau(sol.vars, N));
    if (N >= 1)
        sol.orders[1] = linear_part(gb, sol.vars, N);
    VecTau Gamma = N >= 1 ? sol.orders[1] : VecTau(sol.vars, N);

    auto& closed = sol.report.add("R_closed");
    auto& obstruction = sol.report.add("obstruction_vanishes");
    auto& nonneg = sol.report.add("R_nonnegative_powers");
    for (int n = 2; n <= N; ++n) {
        VecTau E = T.exp(TauAlgebra::shift(Gamma, -1), n);
        VecTau Pn = E.homogeneous_part(n);
        VecTau Rn = TauAlgebra::shift(T.apply(Delta, Pn), 1);
        Rn *= Scalar(-1);

        const VecTau dR = T.apply(Delta, Rn);
        for (const auto& [m, c] : dR.terms()) {
            ++closed.cases;
            for (const auto& [e, v] : c.terms())
                closed.fail("Delta R_" + std::to_string(n) + " at " + where(*sol.vars, m, e));
        }
        for (const auto& [m, c] : Rn.terms()) {
            ++nonneg.cases;
            if (!c.is_zero() && c.valuation() < 0)
                throw NegativePowerError("R_" + std::to_string(n) + " has hbar^" + std::to_string(c.valuation()) +
                                         " at tau " + monomial_str(*sol.vars, m));
        }
        const VecTau classes = T.apply(PR.P, Rn);
        for (const auto& [m, c] : classes.terms()) {
            ++obstruction.cases;
            if (!c.is_zero())
                throw ObstructionError("P'(R_" + std::to_string(n) + ") != 0 at tau " + monomial_str(*sol.vars, m));
        }
        // Gamma^{(n)} is homogeneous of tau-order n, hence known at every order up to N.
        VecTau Gn = T.apply(PR.H, Rn).with_order(N);
        Gn *= Scalar(-1);
        sol.orders[n] = Gn;
        Gamma += Gn;
    }
    sol.Gamma = Gamma;
    return sol;
}

Report verify_qme(const BVAlgebra& A, const PerturbedRetract& PR, const GoodBasis& gb, const QmeSolution& sol)
{
    Report rep;
    const auto& V = *A.space();
    const auto& vars = *sol.vars;
    TauAlgebra T(A, sol.vars);

    auto& res = rep.add("residual_zero");
    VecTau r = qme_residual(A, sol.Gamma, sol.N, sol.M);
    for (const auto& [m, c] : r.terms()) {
        ++res.cases;
        for (const auto& [e, v] : c.terms())
            res.fail("residual at " + where(vars, m, e));
    }
    if (r.terms().empty())
        res.cases = 1;

    auto& gauge = rep.add("gauge_image_H");
    for (int n = 2; n <= sol.N; ++n) {
        VecTau Gn = sol.Gamma.homogeneous_part(n);
        const VecTau hG = T.apply(PR.H, Gn);
        for (const auto& [m, c] : hG.terms()) {
            ++gauge.cases;
            for (const auto& [e, v] : c.terms())
                gauge.fail("H' Gamma at " + where(vars, m, e));
        }
    }

    auto& hom = rep.add("homogeneous_degree_2");
    for (const auto& [m, c] : sol.Gamma.terms()) {
        const int want = 2 - monomial_degree(vars, m);
        for (const auto& [e, v] : c.terms())
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (sgn(v[j]) == 0)
                    continue;
                ++hom.cases;
                if (V.degree(j) + 2 * e != want)
                    hom.fail("component " + V.label(j) + " at " + where(vars, m, e));
            }
    }

    auto& lin = rep.add("linear_part");
    ++lin.cases;
    if (!(sol.Gamma.homogeneous_part(1) == linear_part(gb, sol.vars, sol.N).homogeneous_part(1)))
        lin.fail("linear part differs from sum alpha_i tau^i");
    return rep;
}

}  // namespace bvf
