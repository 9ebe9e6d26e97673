#include "../support/chain.hpp"
#include "../support/oracle.hpp"

#include <doctest.h>

using namespace bvf;
using testing_support::corpus_entry;

namespace {

// The six retract identities recomputed with plain dense products.
bool identities_hold(const BVAlgebra& A, const Retract& R)
{
    using namespace oracle;
    DMat d = dense(A.d()), i = dense(R.iota), p = dense(R.p), h = dense(R.h);
    const std::size_t n = A.dim(), mu = R.H->dim();
    return mul(p, i) == identity(mu) && add(mul(h, d), mul(d, h)) == sub(mul(i, p), identity(n)) &&
           is_zero(mul(h, h)) && is_zero(mul(h, i)) && is_zero(mul(p, h)) && is_zero(mul(d, i)) &&
           is_zero(mul(p, d));
}

std::vector<int> betti_of(const Retract& R)
{
    std::map<int, int> b;
    for (std::size_t i = 0; i < R.H->dim(); ++i)
        ++b[R.H->degree(i)];
    std::vector<int> out;
    for (int q = 0; q <= (b.empty() ? 0 : b.rbegin()->first); ++q)
        out.push_back(b.count(q) ? b[q] : 0);
    return out;
}

}  // namespace

TEST_CASE("d = 0 gives the trivial retract")
{
    Instance inst = build_instance(corpus_entry("torus-2"));
    Retract R = build_retract(inst.A, InnerProduct::orthonormal(inst.A.space()));
    CHECK(R.H->dim() == 4);
    CHECK(R.h.is_zero());
    CHECK(Matrix::from_map(R.iota) == Matrix::identity(4));
    CHECK(Matrix::from_map(R.p) == Matrix::identity(4));
    CHECK(verify_retract(inst.A, R).passed());
}

TEST_CASE("Betti numbers")
{
    Instance t2 = build_instance(corpus_entry("torus-2"));
    CHECK(betti_of(build_retract(t2.A, InnerProduct::orthonormal(t2.A.space()))) == std::vector<int>{1, 2, 1});
    Instance h = build_instance(corpus_entry("heisenberg"));
    Retract R = build_retract(h.A, InnerProduct::orthonormal(h.A.space()));
    CHECK(betti_of(R) == std::vector<int>{1, 2, 2, 1});
    CHECK(R.H->dim() == oracle::cohomology_dim(oracle::build(corpus_entry("heisenberg"))));
    Instance c = build_instance(corpus_entry("contractible"));
    CHECK(betti_of(build_retract(c.A, InnerProduct::orthonormal(c.A.space()))) == std::vector<int>{1});
}

TEST_CASE("harmonic representatives are closed and coclosed")
{
    Instance inst = build_instance(corpus_entry("heisenberg-jacobi"));
    InnerProduct ip = InnerProduct::random(inst.A.space(), 3);
    CHECK(ip.positive_definite());
    Cohomology H = cohomology(inst.A, ip);
    GradedMap dstar = adjoint(inst.A.d(), ip);
    for (const auto& rep : H.representatives) {
        CHECK(is_zero(inst.A.d().apply(rep)));
        CHECK(is_zero(dstar.apply(rep)));
    }
    CHECK(H.representatives.front() == inst.A.unit_vector());
}

TEST_CASE("adjoint satisfies <d x, y> = <x, d* y>")
{
    Instance inst = build_instance(corpus_entry("filiform-4-jacobi"));
    InnerProduct ip = InnerProduct::random(inst.A.space(), 8);
    Matrix G = ip.full();
    GradedMap dstar = adjoint(inst.A.d(), ip);
    const std::size_t n = inst.A.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Vec x = unit_vec(n, a), y = unit_vec(n, b);
            CHECK(dot(G.apply(inst.A.d().apply(x)), y) == dot(G.apply(x), dstar.apply(y)));
        }
}

TEST_CASE("retract identities on the corpus, orthonormal and random inner products")
{
    for (const auto& d : bundled_corpus()) {
        CAPTURE(d.name);
        Instance inst = build_instance(d);
        if (!validate_algebra(inst.A).passed())
            continue;
        for (int s = -1; s < 2; ++s) {
            InnerProduct ip = s < 0 ? InnerProduct::orthonormal(inst.A.space())
                                    : InnerProduct::random(inst.A.space(), static_cast<std::uint64_t>(s + 1));
            Retract R = build_retract(inst.A, ip);
            CHECK(verify_retract(inst.A, R).passed());
            CHECK(identities_hold(inst.A, R));
        }
    }
}

TEST_CASE("h with the wrong sign breaks the homotopy identity")
{
    Instance inst = build_instance(corpus_entry("heisenberg"));
    Retract R = build_retract(inst.A, InnerProduct::orthonormal(inst.A.space()));
    Retract bad = R;
    bad.h = -R.h;
    Report rep = verify_retract(inst.A, bad);
    CHECK_FALSE(rep.find("homotopy")->passed);
    bool on_e1e2 = false;
    for (const auto& v : rep.find("homotopy")->violations)
        on_e1e2 = on_e1e2 || v.find("e1e2") != std::string::npos;
    CHECK(on_e1e2);
    CHECK_FALSE(identities_hold(inst.A, bad));
}

TEST_CASE("perturbed p or h breaks a side condition")
{
    Instance inst = build_instance(corpus_entry("heisenberg"));
    Retract R = build_retract(inst.A, InnerProduct::orthonormal(inst.A.space()));
    Retract bad = R;
    // p picks up a component on e3, which h hits
    const auto& V = *inst.A.space();
    bad.p.set(1, V.index_of("e3"), 1);
    Report rep = verify_retract(inst.A, bad);
    CHECK_FALSE(rep.find("p_h")->passed);

    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Retract q = perturb_retract(inst.A, R, seed);
        CHECK_FALSE(verify_retract(inst.A, q).passed());
        CHECK_FALSE(identities_hold(inst.A, q));
    }
}

TEST_CASE("inner products: random is positive definite and seeded")
{
    ExteriorAlgebra ext(3);
    InnerProduct a = InnerProduct::random(ext.space(), 42);
    InnerProduct b = InnerProduct::random(ext.space(), 42);
    InnerProduct c = InnerProduct::random(ext.space(), 43);
    CHECK(a.positive_definite());
    CHECK(a.full() == b.full());
    CHECK_FALSE(a.full() == c.full());
    CHECK(a.full() == a.full().transpose());
    Matrix cross = Matrix::identity(8);
    cross(0, 1) = cross(1, 0) = 1;
    CHECK_THROWS_AS(InnerProduct::from_full(ext.space(), cross), InputError);
    Matrix indefinite = Matrix::identity(8);
    indefinite(0, 0) = -1;
    CHECK_FALSE(InnerProduct::from_full(ext.space(), indefinite).positive_definite());
    ExteriorAlgebra e2(2);
    BVAlgebra A(e2.space(), 0, e2.mult_entries(), {GradedMap::zero(e2.space(), e2.space(), 1)});
    CHECK_THROWS_AS(cohomology(A, InnerProduct::from_full(e2.space(), [] {
                                   Matrix m = Matrix::identity(4);
                                   m(1, 1) = -1;
                                   return m;
                               }())),
                    MathError);
}
