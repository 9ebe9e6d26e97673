#include "bvfrob/frobenius.hpp"

#include "bvfrob/checks.hpp"

namespace bvf {

namespace {

bool series_vanishes(const ScalarTau& x)
{
    for (const auto& [m, c] : x.terms())
        if (!c.is_zero())
            return false;
    return true;
}

bool series_vanishes(const VecTau& x)
{
    for (const auto& [m, c] : x.terms())
        if (!c.is_zero())
            return false;
    return true;
}

ScalarTau difference(const ScalarTau& a, const ScalarTau& b)
{
    ScalarTau d = a;
    d -= b;
    return d;
}

LaurentScalar one_scalar() { return LaurentScalar::constant(Scalar(1), 1); }

ScalarTau constant_series(const TauVarsPtr& vars, int order, const Scalar& c)
{
    ScalarTau s(vars, order);
    if (sgn(c) != 0)
        s.add({}, LaurentScalar::constant(c, 1));
    return s;
}

// H-valued series times scalar series; scalars are even so only monomial signs appear.
VecTau times_scalar(const VecTau& v, const ScalarTau& s, int order, std::size_t dim)
{
    return tau_product<LaurentVec>(v, s, order, [dim](const LaurentVec& c, const LaurentScalar& x, bool) {
        return laurent_product<Vec>(c, x, dim, [](const Vec& a, const Scalar& b) { return b * a; });
    });
}

VecTau linear_classes(const TauVarsPtr& vars, std::size_t mu, int order)
{
    VecTau out(vars, order);
    for (std::size_t i = 0; i < mu; ++i)
        out.add({static_cast<std::uint16_t>(i)}, LaurentVec::constant(unit_vec(mu, i), mu));
    return out;
}

std::string at(const TauVariables& vars, const Monomial& m) { return "tau " + monomial_str(vars, m); }

std::string idx(std::initializer_list<std::size_t> ids)
{
    std::string s = "(";
    for (auto i : ids) {
        if (s.size() > 1)
            s += ",";
        s += std::to_string(i);
    }
    return s + ")";
}

}  // namespace

LaurentVec cohomology_class(const BVAlgebra& A, const PerturbedRetract& PR, const LaurentVec& x)
{
    const OpSeries Delta = delta_total(A, A.K());
    LaurentVec dx = Delta.apply(x);
    for (const auto& [e, v] : dx.terms())
        if (e <= PR.M)
            throw MathError("cohomology_class: argument is not Delta-closed at hbar^" + std::to_string(e));
    LaurentVec cls = PR.P.apply(x);
    LaurentVec r = x - PR.I.apply(cls);
    LaurentVec hx = PR.H.apply(x);
    hx *= Scalar(-1);
    r -= Delta.apply(hx);
    for (const auto& [e, v] : r.terms())
        if (e <= PR.M)
            throw MathError("cohomology_class: x - I'P'x != Delta(-H'x) at hbar^" + std::to_string(e));
    return cls;
}

VecTau class_series(const PerturbedRetract& PR, const VecTau& x)
{
    return x.map<LaurentVec>([&](const LaurentVec& c) { return PR.P.apply(c); });
}

ScalarTau component(const VecTau& x, std::size_t k)
{
    return x.map<LaurentScalar>([k](const LaurentVec& c) {
        return c.map<Scalar>(1, [k](const Vec& v) { return v[k]; });
    });
}

ScalarTau nonnegative_part(const ScalarTau& x)
{
    return x.map<LaurentScalar>([](const LaurentScalar& c) { return c.nonnegative(); });
}

VecTau nonnegative_part(const VecTau& x)
{
    return x.map<LaurentVec>([](const LaurentVec& c) { return c.nonnegative(); });
}

FlatCoordinates flat_coordinates(const BVAlgebra& A, const PerturbedRetract& PR, const QmeSolution& sol)
{
    FlatCoordinates fc;
    const int N = sol.N;
    const std::size_t mu = sol.mu;
    TauAlgebra T(A, sol.vars);

    auto J_of = [&](const VecTau& Gamma) {
        VecTau E = T.exp(TauAlgebra::shift(Gamma, -1), N);
        E -= T.one(N);
        return class_series(PR, TauAlgebra::shift(E, 1));
    };
    fc.J = J_of(sol.Gamma);
    for (std::size_t i = 0; i < mu; ++i)
        fc.T.push_back(nonnegative_part(component(fc.J, i)));

    for (std::size_t i = 0; i < mu; ++i) {
        for (const auto& [m, c] : fc.T[i].terms()) {
            if (m.size() == 1) {
                LaurentScalar want = LaurentScalar::constant(Scalar(m[0] == i ? 1 : 0), 1);
                if (c.terms() != want.terms())
                    throw MathError("flat_coordinates: linear part of pi(J) is not the identity");
            }
            for (const auto& [e, v] : c.terms())
                if (e != 0)
                    fc.hbar_free = false;
        }
        if (N >= 1 && !fc.T[i].find({static_cast<std::uint16_t>(i)}))
            throw MathError("flat_coordinates: linear part of pi(J) is not invertible");
    }

    // Fixed point: phi <- phi - [pi(J(phi)) - tau]_n. With hbar-dependent corrections, positive
    // hbar powers of phi meet negative powers of J, which plain series inversion would miss.
    for (std::size_t i = 0; i < mu; ++i)
        fc.phi.push_back(scalar_monomial(sol.vars, N, {static_cast<std::uint16_t>(i)}, one_scalar()));
    for (int n = 2; n <= N; ++n) {
        VecTau composed = nonnegative_part(substitute(fc.J, fc.phi, n));
        std::vector<ScalarTau> err;
        for (std::size_t i = 0; i < mu; ++i)
            err.push_back(component(composed, i).homogeneous_part(n).with_order(N));
        for (std::size_t i = 0; i < mu; ++i)
            fc.phi[i] -= err[i];
    }

    fc.Gamma = N >= 1 ? substitute(sol.Gamma, fc.phi, N) : sol.Gamma;

    auto& flat = fc.report.add("flat_condition");
    VecTau residual = nonnegative_part(J_of(fc.Gamma));
    residual -= linear_classes(sol.vars, mu, N);
    for (const auto& [m, c] : residual.terms()) {
        ++flat.cases;
        if (!c.is_zero())
            flat.fail("pi[hbar e^{Gamma/hbar} - hbar] differs from sum a_i tau^i at " + at(*sol.vars, m));
    }
    flat.cases = std::max<std::size_t>(flat.cases, 1);
    return fc;
}

namespace {

LaurentScalar trace_pairing(const BVAlgebra& A, const Trace& tr, const LaurentVec& x, const LaurentVec& y, bool odd)
{
    const auto& V = *A.space();
    return laurent_product<Scalar>(x, y.bar(), 1, [&](const Vec& a, const Vec& b) {
        if (!odd)
            return pairing(A, tr, a, b);
        Vec sb = b;
        for (std::size_t j = 0; j < sb.size(); ++j)
            if (V.degree(j) & 1)
                sb[j] = -sb[j];
        return pairing(A, tr, a, sb);
    });
}

}  // namespace

TangentFrame tangent_frame(const BVAlgebra& A, const PerturbedRetract& PR, const Trace& tr,
                           const QmeSolution& sol, const FlatCoordinates& flat)
{
    TangentFrame fr;
    const int N = sol.N;
    const std::size_t mu = sol.mu;
    TauAlgebra T(A, sol.vars);
    const VecTau E = T.exp(TauAlgebra::shift(flat.Gamma, -1), N);

    std::vector<VecTau> first;
    for (std::size_t i = 0; i < mu; ++i) {
        first.push_back(TauAlgebra::shift(E.right_derivative(i), 1));
        fr.sigma.push_back(class_series(PR, first.back()));
    }
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            fr.second.push_back(class_series(PR, TauAlgebra::shift(first[i].right_derivative(j), 1)));

    fr.pairing.assign(mu, std::vector<ScalarTau>(mu));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            fr.pairing[i][j] = tau_product<LaurentScalar>(
                first[i], first[j], N - 1,
                [&](const LaurentVec& x, const LaurentVec& y, bool odd) { return trace_pairing(A, tr, x, y, odd); });

    auto& origin = fr.report.add("frame_at_origin");
    auto& lattice = fr.report.add("frame_flat");
    for (std::size_t i = 0; i < mu; ++i) {
        ++origin.cases;
        const LaurentVec* c0 = fr.sigma[i].find({});
        if (!c0 || c0->nonnegative().terms() != LaurentVec::constant(unit_vec(mu, i), mu).terms())
            origin.fail("sigma_" + std::to_string(i) + "(0) != a_" + std::to_string(i));
        ++lattice.cases;
        VecTau rest = nonnegative_part(fr.sigma[i]);
        VecTau ai(sol.vars, rest.order());
        ai.add({}, LaurentVec::constant(unit_vec(mu, i), mu));
        rest -= ai;
        if (!series_vanishes(rest))
            lattice.fail("pi(sigma_" + std::to_string(i) + ") != a_" + std::to_string(i));
    }
    return fr;
}

StructureConstants structure_constants(const TangentFrame& frame, const QmeSolution& sol)
{
    StructureConstants sc;
    const std::size_t mu = sol.mu;
    const int n0 = std::max(sol.N - 2, 0);
    sc.mu = mu;
    sc.order = n0;
    sc.full.assign(mu, std::vector<std::vector<ScalarTau>>(mu, std::vector<ScalarTau>(mu, ScalarTau(sol.vars, n0))));

    auto remainder = [&](std::size_t i, std::size_t j) {
        VecTau Y = frame.second[i * mu + j].truncated(n0);
        for (std::size_t k = 0; k < mu; ++k)
            if (!sc.full[i][j][k].is_zero())
                Y -= times_scalar(frame.sigma[k], sc.full[i][j][k], n0, mu);
        return Y;
    };

    auto& modL = sc.report.add("decomposition_mod_L");
    auto& exact = sc.report.add("decomposition_exact");
    auto& hfree = sc.report.add("hbar_free");
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            for (int n = 0; n <= n0; ++n) {
                VecTau part = nonnegative_part(remainder(i, j)).homogeneous_part(n);
                for (const auto& [m, c] : part.terms())
                    for (std::size_t k = 0; k < mu; ++k)
                        sc.full[i][j][k].add(m, c.map<Scalar>(1, [k](const Vec& v) { return v[k]; }));
            }
            VecTau Y = remainder(i, j);
            ++modL.cases;
            ++exact.cases;
            if (!series_vanishes(nonnegative_part(Y)))
                modL.fail("remainder of X" + idx({i, j}) + " has nonnegative hbar powers");
            if (!series_vanishes(Y))
                exact.fail("remainder of X" + idx({i, j}) + " is nonzero");
            for (std::size_t k = 0; k < mu; ++k)
                for (const auto& [m, c] : sc.full[i][j][k].terms()) {
                    ++hfree.cases;
                    for (const auto& [e, v] : c.terms())
                        if (e != 0)
                            hfree.fail("A~" + idx({i, j, k}) + " has hbar^" + std::to_string(e) + " at " +
                                       at(*sol.vars, m));
                }
        }

    sc.A = sc.full;
    for (auto& a : sc.A)
        for (auto& b : a)
            for (auto& s : b)
                s = s.map<LaurentScalar>([](const LaurentScalar& c) {
                    LaurentScalar out(1);
                    if (auto it = c.terms().find(0); it != c.terms().end())
                        out.add_term(0, it->second);
                    return out;
                });
    return sc;
}

ScalarTau third_derivative(const ScalarTau& f, std::size_t i, std::size_t j, std::size_t k)
{
    return f.right_derivative(i).right_derivative(j).right_derivative(k);
}

FrobeniusData metric_and_potential(const Matrix& K0, const GradedSpace& H, const StructureConstants& sc,
                                   const TangentFrame& frame)
{
    FrobeniusData F;
    const std::size_t mu = sc.mu;
    F.mu = mu;
    F.order = sc.order;
    F.g = K0;
    F.A = sc.A;
    F.pairing = frame.pairing;
    F.unit = 0;  // the cohomology basis starts with the unit class
    for (std::size_t i = 0; i < mu; ++i)
        F.degrees.push_back(H.degree(i));
    if (mu == 0)
        return F;
    auto vars = sc.A[0][0][0].vars();

    F.c.assign(mu, std::vector<std::vector<ScalarTau>>(mu, std::vector<ScalarTau>(mu, ScalarTau(vars, sc.order))));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            for (std::size_t k = 0; k < mu; ++k)
                for (std::size_t l = 0; l < mu; ++l)
                    if (sgn(K0(l, k)) != 0) {
                        // g(d_l A, d_k) = (-1)^{|A||d_k|} g(d_l, d_k) A
                        const bool pa = is_odd(F.degrees[i] + F.degrees[j] + F.degrees[l]);
                        ScalarTau t = sc.A[i][j][l];
                        t *= pa && is_odd(F.degrees[k]) ? -K0(l, k) : K0(l, k);
                        F.c[i][j][k] += t;
                    }

    // Euler integration, degree by degree: f = (1/n) sum_i (f d_i) tau^i for f of tau-order n.
    const int top = sc.order + 3;
    F.Phi = ScalarTau(vars, top);
    auto mono = [&](std::size_t i) {
        return scalar_monomial(vars, top, {static_cast<std::uint16_t>(i)}, one_scalar());
    };
    for (int r = 0; r <= sc.order; ++r) {
        ScalarTau level(vars, top);
        for (std::size_t i = 0; i < mu; ++i) {
            ScalarTau inner_i(vars, top);
            for (std::size_t j = 0; j < mu; ++j) {
                ScalarTau inner_j(vars, top);
                for (std::size_t k = 0; k < mu; ++k) {
                    ScalarTau part = F.c[i][j][k].homogeneous_part(r).with_order(top);
                    if (!part.is_zero())
                        inner_j += part * mono(k);
                }
                if (!inner_j.is_zero())
                    inner_i += inner_j * mono(j);
            }
            if (!inner_i.is_zero())
                level += inner_i * mono(i);
        }
        level *= Scalar(1, (r + 1) * (r + 2) * (r + 3));
        F.Phi += level;
    }
    return F;
}

Report verify_frobenius(const FrobeniusData& F, int N)
{
    Report rep;
    const std::size_t mu = F.mu;
    auto odd = [&](std::size_t i) { return is_odd(F.degrees[i]); };
    auto signed_series = [](ScalarTau s, bool neg) {
        if (neg)
            s *= Scalar(-1);
        return s;
    };
    auto& comm = rep.add("commutativity");
    auto& assoc = rep.add("associativity");
    auto& unit = rep.add("unit");
    auto& sym = rep.add("c_symmetric");
    auto& pot = rep.add("potential_third_derivatives");
    auto& flat = rep.add("flatness_surrogate");
    if (mu == 0)
        return rep;
    auto vars = F.A[0][0][0].vars();
    const int n0 = F.order;

    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            for (std::size_t k = 0; k < mu; ++k) {
                ++comm.cases;
                if (!series_vanishes(difference(F.A[i][j][k], signed_series(F.A[j][i][k], odd(i) && odd(j)))))
                    comm.fail("A" + idx({i, j, k}) + " != (-1)^{|i||j|} A" + idx({j, i, k}));
            }

    // (d_i d_j) d_k = d_i (d_j d_k) with scalars acting on the right.
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            for (std::size_t k = 0; k < mu; ++k)
                for (std::size_t m = 0; m < mu; ++m) {
                    ++assoc.cases;
                    ScalarTau lhs(vars, n0), rhs(vars, n0);
                    for (std::size_t l = 0; l < mu; ++l) {
                        if (!F.A[i][j][l].is_zero() && !F.A[l][k][m].is_zero()) {
                            const bool pa = odd(i) ^ odd(j) ^ odd(l);
                            lhs += signed_series(F.A[l][k][m] * F.A[i][j][l], pa && odd(k));
                        }
                        if (!F.A[i][l][m].is_zero() && !F.A[j][k][l].is_zero())
                            rhs += F.A[i][l][m] * F.A[j][k][l];
                    }
                    if (!series_vanishes(difference(lhs, rhs)))
                        assoc.fail("associativity at " + idx({i, j, k, m}));
                }

    for (std::size_t j = 0; j < mu; ++j)
        for (std::size_t k = 0; k < mu; ++k) {
            ++unit.cases;
            if (!series_vanishes(difference(F.A[F.unit][j][k], constant_series(vars, n0, Scalar(j == k ? 1 : 0)))))
                unit.fail("A" + idx({F.unit, j, k}) + " != delta");
        }

    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            for (std::size_t k = 0; k < mu; ++k) {
                ++sym.cases;
                if (!series_vanishes(difference(F.c[i][j][k], signed_series(F.c[j][i][k], odd(i) && odd(j)))))
                    sym.fail("c" + idx({i, j, k}) + " != (-1)^{|i||j|} c" + idx({j, i, k}));
                if (!series_vanishes(difference(F.c[i][j][k], signed_series(F.c[i][k][j], odd(j) && odd(k)))))
                    sym.fail("c" + idx({i, j, k}) + " != (-1)^{|j||k|} c" + idx({i, k, j}));
                ++pot.cases;
                if (!series_vanishes(difference(third_derivative(F.Phi, i, j, k).truncated(n0), F.c[i][j][k])))
                    pot.fail("d^3 Phi" + idx({i, j, k}) + " != c" + idx({i, j, k}));
            }

    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            ++flat.cases;
            const int ord = std::min(F.pairing[i][j].order(), N - 1);
            if (!series_vanishes(difference(F.pairing[i][j].truncated(ord), constant_series(vars, ord, F.g(i, j)))))
                flat.fail("K(sigma_" + std::to_string(i) + ", sigma_" + std::to_string(j) + ") != g" + idx({i, j}));
        }
    return rep;
}

}  // namespace bvf
