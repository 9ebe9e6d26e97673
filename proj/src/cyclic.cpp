#include "bvfrob/cyclic.hpp"
#include "bvfrob/checks.hpp"

namespace bvf {

Scalar pairing(const BVAlgebra& A, const Trace& tr, const Vec& a, const Vec& b)
{
    return dot(tr.functional, A.multiply(a, b));
}

namespace {

Matrix pairing_matrix(const BVAlgebra& A, const Trace& tr)
{
    const std::size_t n = A.dim();
    Matrix P(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            P(i, j) = dot(tr.functional, A.multiply_basis(i, j));
    return P;
}

Scalar bilinear(const Matrix& P, const Vec& a, const Vec& b)
{
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (sgn(b[j]) != 0)
                s += a[i] * P(i, j) * b[j];
    }
    return s;
}

std::optional<int> total_degree(const GradedSpace& V, const LaurentVec& x)
{
    std::optional<int> deg;
    for (const auto& [e, v] : x.terms()) {
        auto d = V.degree_of(v);
        if (!d)
            throw MathError("series coefficient is not homogeneous");
        int t = *d + 2 * e;
        if (deg && *deg != t)
            throw MathError("series is not homogeneous in total degree");
        deg = t;
    }
    return deg;
}

LaurentScalar k_pairing_with(const GradedSpace& V, const Matrix& P, int n, const LaurentVec& alpha,
                             const LaurentVec& beta)
{
    auto da = total_degree(V, alpha);
    auto db = total_degree(V, beta);
    if (da && db && ((*da + *db - n) % 2) != 0 && !(alpha.is_zero() || beta.is_zero()))
        throw MathError("k_pairing: total degrees " + std::to_string(*da) + " and " + std::to_string(*db) +
                        " differ from complementary by an odd amount");
    return laurent_product<Scalar>(alpha, beta.bar(), 1,
                                   [&](const Vec& a, const Vec& b) { return bilinear(P, a, b); });
}

}  // namespace

Matrix cohomology_pairing(const BVAlgebra& A, const Trace& tr, const Retract& R)
{
    Matrix P = pairing_matrix(A, tr);
    const std::size_t mu = R.H->dim();
    Matrix K0(mu, mu);
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            K0(i, j) = bilinear(P, R.iota.column(i), R.iota.column(j));
    return K0;
}

Report validate_cyclic(const BVAlgebra& A, const Trace& tr, const Retract& R)
{
    Report rep;
    const auto& V = *A.space();
    const std::size_t n = A.dim();
    if (tr.functional.size() != n)
        throw InputError("trace has the wrong length");

    auto& support = rep.add("trace_support");
    for (std::size_t i = 0; i < n; ++i) {
        ++support.cases;
        if (sgn(tr.functional[i]) != 0 && V.degree(i) != tr.n)
            support.fail("Tr(" + V.label(i) + ") != 0 outside degree " + std::to_string(tr.n));
    }

    Matrix P = pairing_matrix(A, tr);
    auto& sym = rep.add("graded_symmetry");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            ++sym.cases;
            if (P(i, j) != sign_of(V.degree(i) * V.degree(j)) * P(j, i))
                sym.fail("(" + V.label(i) + "," + V.label(j) + ")");
        }

    auto& cyc = rep.add("delta_cyclicity");
    for (int k = 0; k <= A.K(); ++k) {
        GradedMap Dk = A.delta(k);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (V.degree(a) + V.degree(b) + 1 - 2 * k != tr.n)
                    continue;
                ++cyc.cases;
                Scalar lhs = bilinear(P, Dk.column(a), unit_vec(n, b));
                Scalar rhs = sign_of(V.degree(a) + k + 1) * bilinear(P, unit_vec(n, a), Dk.column(b));
                if (lhs != rhs)
                    cyc.fail("k=" + std::to_string(k) + " (" + V.label(a) + "," + V.label(b) + "): " + lhs.get_str() +
                             " vs " + rhs.get_str());
            }
    }

    auto& perfect = rep.add("perfect_pairing");
    Matrix K0 = cohomology_pairing(A, tr, R);
    const auto& H = *R.H;
    for (int q : H.degrees()) {
        auto rows = H.indices_of_degree(q);
        auto cols = H.indices_of_degree(tr.n - q);
        ++perfect.cases;
        Matrix blk(rows.size(), cols.size());
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t c = 0; c < cols.size(); ++c)
                blk(a, c) = K0(rows[a], cols[c]);
        std::size_t r = rank(blk);
        if (r != rows.size() || r != cols.size())
            perfect.fail("degree " + std::to_string(q) + " block has rank " + std::to_string(r) + ", Betti " +
                         std::to_string(rows.size()) + "/" + std::to_string(cols.size()));
    }
    return rep;
}

LaurentScalar k_pairing(const BVAlgebra& A, const Trace& tr, const LaurentVec& alpha, const LaurentVec& beta)
{
    return k_pairing_with(*A.space(), pairing_matrix(A, tr), tr.n, alpha, beta);
}

Vec evaluate_at_zero(const LaurentVec& alpha) { return alpha.coeff(0); }

Report h_compatibility(const BVAlgebra& A, const Retract& R, const Trace& tr)
{
    Report rep;
    const auto& V = *A.space();
    const std::size_t n = A.dim();
    Matrix P = pairing_matrix(A, tr);
    auto& c = rep.add("h_compatibility");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (V.degree(a) + V.degree(b) != tr.n + 1)
                continue;
            ++c.cases;
            Scalar lhs = bilinear(P, R.h.column(a), unit_vec(n, b));
            Scalar rhs = sign_of(V.degree(a)) * bilinear(P, unit_vec(n, a), R.h.column(b));
            if (lhs != rhs)
                c.fail("(" + V.label(a) + "," + V.label(b) + "): " + lhs.get_str() + " vs " + rhs.get_str());
        }
    return rep;
}

GoodBasis good_basis(const BVAlgebra& A, const Retract& R, const Trace& tr, int M)
{
    GoodBasis out;
    const auto& V = *A.space();
    const std::size_t n = A.dim();
    const std::size_t mu = R.H->dim();
    SplittingMap sm = splitting_map(A, R, M);
    const int top = std::min(M, sm.map.precision());
    for (std::size_t i = 0; i < mu; ++i) {
        LaurentVec a(n, sm.map.precision() >= kExact ? kExact : M);
        for (int k = 0; k <= std::max(top, sm.map.top_exponent()) && k <= a.precision(); ++k)
            a.add_term(k, sm.map.coeff(k).column(i));
        out.alpha.push_back(std::move(a));
    }
    Matrix P = pairing_matrix(A, tr);
    out.K0 = cohomology_pairing(A, tr, R);

    auto& lemma = out.report.add("compatibility_identities");
    for (std::size_t x = 0; x < mu; ++x)
        for (std::size_t b = 0; b < n; ++b) {
            ++lemma.cases;
            if (sgn(bilinear(P, R.iota.column(x), R.h.column(b))) != 0)
                lemma.fail("(iota " + R.H->label(x) + ", h " + V.label(b) + ") != 0");
        }
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
            ++lemma.cases;
            if (sgn(bilinear(P, R.h.column(b), R.h.column(c))) != 0)
                lemma.fail("(h " + V.label(b) + ", h " + V.label(c) + ") != 0");
        }

    auto& good = out.report.add("good_basis");
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            if (R.H->degree(i) + R.H->degree(j) != tr.n)
                continue;
            LaurentScalar K = k_pairing_with(V, P, tr.n, out.alpha[i], out.alpha[j]);
            for (int m = 0; m <= top; ++m) {
                ++good.cases;
                Scalar expect = m == 0 ? out.K0(i, j) : Scalar(0);
                if (K.coeff(m) != expect)
                    good.fail("K(alpha_" + R.H->label(i) + ", alpha_" + R.H->label(j) + ") at hbar^" +
                              std::to_string(m) + " = " + K.coeff(m).get_str());
            }
        }

    auto& ts = out.report.add("evaluation_inverts_splitting");
    for (std::size_t i = 0; i < mu; ++i) {
        ++ts.cases;
        if (R.p.apply(evaluate_at_zero(out.alpha[i])) != unit_vec(mu, i))
            ts.fail("p T S iota " + R.H->label(i) + " != " + R.H->label(i));
    }
    out.report.append(sm.report, "splitting.");
    return out;
}

Report contraction_adjoint_check(const ExteriorAlgebra& ext, const BVAlgebra& A, const Multivector& w, int k)
{
    Report rep;
    const auto& V = *A.space();
    const std::size_t N = A.dim();
    const int n = static_cast<int>(ext.generators());
    Trace tr{top_trace(ext), n};
    GradedMap iw = contraction(ext, w);
    Matrix P = pairing_matrix(A, tr);
    auto& c = rep.add("contraction_adjoint[k=" + std::to_string(k) + "]");
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            if (V.degree(a) + V.degree(b) != n + k)
                continue;
            ++c.cases;
            Scalar lhs = bilinear(P, iw.column(a), unit_vec(N, b));
            Scalar rhs = sign_of(k * (V.degree(a) + 1)) * bilinear(P, unit_vec(N, a), iw.column(b));
            if (lhs != rhs)
                c.fail("(" + V.label(a) + "," + V.label(b) + "): " + lhs.get_str() + " vs " + rhs.get_str());
        }
    return rep;
}

Report opposite_filtration_check(const BVAlgebra& A, const Trace& tr, const std::vector<LaurentVec>& alpha,
                                 const std::vector<LaurentVec>& classes, int window)
{
    Report rep;
    const auto& V = *A.space();
    Matrix P = pairing_matrix(A, tr);
    const std::size_t mu = alpha.size();

    auto& res = rep.add("residue");
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            auto di = total_degree(V, alpha[i]);
            auto dj = total_degree(V, alpha[j]);
            if (!di || !dj || *di + *dj != tr.n)
                continue;
            for (int s = 1; s <= window; ++s)
                for (int t = 1; t <= window; ++t) {
                    ++res.cases;
                    LaurentScalar K =
                        k_pairing_with(V, P, tr.n, alpha[i].shifted(-s), alpha[j].shifted(-t));
                    if (K.precision() < -1)
                        continue;
                    if (sgn(K.coeff(-1)) != 0)
                        res.fail("Res K(hbar^-" + std::to_string(s) + " alpha_" + std::to_string(i) + ", hbar^-" +
                                 std::to_string(t) + " alpha_" + std::to_string(j) + ") = " + K.coeff(-1).get_str());
                }
        }

    // hbar^{-1} (hbar^{-s} alpha_i) must be the generator hbar^{-(s+1)} alpha_i of L.
    auto& stable = rep.add("hbar_inverse_stable");
    for (std::size_t i = 0; i < mu; ++i)
        for (int s = 1; s < window; ++s) {
            ++stable.cases;
            if (!(alpha[i].shifted(-s).shifted(-1) == alpha[i].shifted(-(s + 1))))
                stable.fail("hbar^-1 hbar^-" + std::to_string(s) + " alpha_" + std::to_string(i) + " not in L");
        }

    auto& split = rep.add("direct_sum");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        ++split.cases;
        const LaurentVec& c = classes[i];
        LaurentVec expect = LaurentVec::constant(unit_vec(mu, i), mu);
        expect.set_precision(c.precision());
        if (!(c == expect))
            split.fail("class of alpha_" + std::to_string(i) + " is not the basis vector a_" + std::to_string(i));
    }
    return rep;
}

}  // namespace bvf
