#include "../support/chain.hpp"
#include "../support/oracle.hpp"

#include <doctest.h>

#include <functional>

using namespace bvf;
using testing_support::Chain;
using testing_support::corpus_entry;

namespace {

oracle::DVec col(const oracle::DMat& m, std::size_t j)
{
    oracle::DVec v(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        v[i] = m[i][j];
    return v;
}

oracle::DVec basis(std::size_t n, std::size_t i)
{
    oracle::DVec v(n, oracle::Q(0));
    v[i] = 1;
    return v;
}

std::vector<std::vector<std::size_t>> words_of_length(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> w;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (w.size() == k) {
            out.push_back(w);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            w.push_back(i);
            rec(i + 1);
            w.pop_back();
        }
    };
    rec(0);
    return out;
}

// Tr((w |- a) b) = (-1)^{k(|a|+1)} Tr(a (w |- b)), checked on all complementary basis pairs.
bool contraction_sign_oracle(std::size_t n, const std::vector<std::size_t>& word)
{
    oracle::Model ext = oracle::exterior(n);
    oracle::DMat iw = oracle::contraction(ext, word);
    const int k = static_cast<int>(word.size());
    const std::size_t N = ext.dim();
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            if (ext.degree[a] + ext.degree[b] != static_cast<int>(n) + k)
                continue;
            oracle::Q lhs = oracle::pairing(ext, col(iw, a), basis(N, b));
            oracle::Q rhs = oracle::pairing(ext, basis(N, a), col(iw, b));
            oracle::Q s = (k * (ext.degree[a] + 1)) % 2 ? -1 : 1;
            if (lhs != s * rhs)
                return false;
        }
    return true;
}

}  // namespace

TEST_CASE("contraction sign identity on four and five generators")
{
    for (std::size_t n : {4u, 5u}) {
        ExteriorAlgebra ext(n);
        BVAlgebra A(ext.space(), 0, ext.mult_entries(), {GradedMap::zero(ext.space(), ext.space(), 1)});
        for (std::size_t k = 1; k <= 3; ++k)
            for (const auto& word : words_of_length(n, k)) {
                Multivector w{{{word, Scalar(1)}}};
                Report r = contraction_adjoint_check(ext, A, w, static_cast<int>(k));
                CHECK(r.passed());
                CHECK(r.checks.front().cases > 0);
                CHECK(contraction_sign_oracle(n, word));
            }
        CHECK(contraction_adjoint_check(ext, A, Multivector{}, 1).passed());
    }
}

TEST_CASE("contraction module action: iota_u iota_v is the contraction by the wedge")
{
    ExteriorAlgebra ext(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Multivector u{{{{i}, Scalar(1)}}}, v{{{{j}, Scalar(1)}}};
            GradedMap lhs = contraction(ext, u) * contraction(ext, v);
            CHECK(lhs == contraction(ext, wedge(u, v)));
            CHECK(Matrix::from_map(lhs) == Matrix::from_map(-(contraction(ext, v) * contraction(ext, u))));
        }
}

TEST_CASE("validate_cyclic on the corpus matches a direct pairing computation")
{
    for (const auto& d : bundled_corpus()) {
        CAPTURE(d.name);
        Instance inst = build_instance(d);
        if (!validate_algebra(inst.A).passed() || !validate_bv(inst.A).passed())
            continue;
        oracle::Model m = oracle::build(d);
        bool cyclic = true;
        const std::size_t N = m.dim();
        for (int k = 0; k <= oracle::top_delta(m); ++k)
            for (std::size_t a = 0; a < N; ++a)
                for (std::size_t b = 0; b < N; ++b) {
                    oracle::DVec Da = col(m.delta_or_zero(static_cast<std::size_t>(k)), a);
                    oracle::DVec Db = col(m.delta_or_zero(static_cast<std::size_t>(k)), b);
                    oracle::Q s = (m.degree[a] + k + 1) % 2 ? -1 : 1;
                    if (oracle::pairing(m, Da, basis(N, b)) != s * oracle::pairing(m, basis(N, a), Db))
                        cyclic = false;
                }
        // perfectness on cohomology
        Retract R = build_retract(inst.A, InnerProduct::orthonormal(inst.A.space()));
        oracle::DMat K0 = oracle::zeros(R.H->dim(), R.H->dim());
        oracle::DMat iota = oracle::dense(R.iota);
        for (std::size_t i = 0; i < R.H->dim(); ++i)
            for (std::size_t j = 0; j < R.H->dim(); ++j)
                K0[i][j] = oracle::pairing(m, col(iota, i), col(iota, j));
        const bool perfect = oracle::rank(K0) == R.H->dim();
        CHECK(validate_cyclic(inst.A, *inst.trace, R).passed() == (cyclic && perfect));
        CHECK(Matrix::from_rows(K0, R.H->dim()) == cohomology_pairing(inst.A, *inst.trace, R));
    }
}

TEST_CASE("contraction by a vector is not cyclic for the top trace")
{
    Instance inst = build_instance(corpus_entry("torus-2-contraction"));
    Retract R = build_retract(inst.A, InnerProduct::orthonormal(inst.A.space()));
    Report r = validate_cyclic(inst.A, *inst.trace, R);
    CHECK_FALSE(r.find("delta_cyclicity")->passed);
    CHECK(r.find("perfect_pairing")->passed);
}

TEST_CASE("trace supported in the wrong degree is not perfect")
{
    Instance inst = build_instance(corpus_entry("torus-2"));
    Retract R = build_retract(inst.A, InnerProduct::orthonormal(inst.A.space()));
    const auto& V = *inst.A.space();
    Trace tr{unit_vec(V.dim(), V.index_of("e1")), 1};
    Report r = validate_cyclic(inst.A, tr, R);
    CHECK_FALSE(r.find("perfect_pairing")->passed);
    CHECK(validate_cyclic(inst.A, *inst.trace, R).passed());
}

TEST_CASE("pairing K is sesquilinear in hbar")
{
    Chain c(corpus_entry("heisenberg-jacobi"));
    const auto& a = c.gb.alpha;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (c.R.H->degree(i) + c.R.H->degree(j) != c.trace().n)
                continue;
            LaurentScalar K = k_pairing(c.A(), c.trace(), a[i], a[j]);
            LaurentScalar left = k_pairing(c.A(), c.trace(), a[i].shifted(1), a[j]);
            LaurentScalar right = k_pairing(c.A(), c.trace(), a[i], a[j].shifted(1));
            CHECK(left.terms() == K.shifted(1).terms());
            CHECK(right.terms() == (Scalar(-1) * K.shifted(1)).terms());
            // value at hbar = 0 is the pairing of the evaluations
            CHECK(K.coeff(0) == pairing(c.A(), c.trace(), evaluate_at_zero(a[i]), evaluate_at_zero(a[j])));
        }
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if ((c.R.H->degree(i) + c.R.H->degree(j) + c.trace().n) % 2 != 0)
                CHECK_THROWS_AS(k_pairing(c.A(), c.trace(), a[i], a[j]), MathError);
}

TEST_CASE("h compatibility: h = 0, star metric and a random metric")
{
    Chain t(corpus_entry("torus-2"));
    CHECK(t.R.h.is_zero());
    CHECK(h_compatibility(t.A(), t.R, t.trace()).passed());

    Chain h(corpus_entry("heisenberg"));
    CHECK(h.ip.kind() == "star");
    CHECK(h_compatibility(h.A(), h.R, h.trace()).passed());

    Chain r(corpus_entry("heisenberg-jacobi-random-metric"));
    CHECK_FALSE(h_compatibility(r.A(), r.R, r.trace()).passed());
}

TEST_CASE("good basis: trivial case, compatibility identities and higher coefficients")
{
    Chain t(corpus_entry("torus-2"));
    for (std::size_t i = 0; i < t.gb.alpha.size(); ++i) {
        CHECK(t.gb.alpha[i].terms().size() == 1);
        CHECK(evaluate_at_zero(t.gb.alpha[i]) == t.R.iota.column(i));
    }

    for (const char* name : {"heisenberg-pi13", "heisenberg-jacobi", "heisenberg-r-pi14"}) {
        CAPTURE(name);
        Chain c(corpus_entry(name));
        oracle::Model m = oracle::build(corpus_entry(name));
        oracle::DMat iota = oracle::dense(c.R.iota), h = oracle::dense(c.R.h);
        const std::size_t N = m.dim();
        for (std::size_t a = 0; a < c.R.H->dim(); ++a)
            for (std::size_t b = 0; b < N; ++b)
                CHECK(sgn(oracle::pairing(m, col(iota, a), col(h, b))) == 0);
        for (std::size_t b = 0; b < N; ++b)
            for (std::size_t cc = 0; cc < N; ++cc)
                CHECK(sgn(oracle::pairing(m, col(h, b), col(h, cc))) == 0);
        CHECK(c.gb.report.passed());
        const auto& a = c.gb.alpha;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (c.R.H->degree(i) + c.R.H->degree(j) != c.trace().n)
                    continue;
                LaurentScalar K = k_pairing(c.A(), c.trace(), a[i], a[j]);
                for (int e = 1; e <= 6; ++e)
                    CHECK(sgn(K.coeff(e)) == 0);
            }
    }
}
