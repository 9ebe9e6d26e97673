#include "../support/chain.hpp"
#include "../support/oracle.hpp"

#include <doctest.h>

using namespace bvf;
using testing_support::corpus_entry;

namespace {

Retract orthonormal_retract(const BVAlgebra& A) { return build_retract(A, InnerProduct::orthonormal(A.space())); }

// (Delta S - S d) at hbar^m, from the coefficients s_k and Delta_k.
oracle::DMat commutator_coeff(const BVAlgebra& A, const OpSeries& S, int m)
{
    using namespace oracle;
    DMat out = zeros(A.dim(), A.dim());
    for (int a = 0; a <= m; ++a)
        out = add(out, mul(dense(A.delta(a)), dense(S.coeff(m - a))));
    return sub(out, mul(dense(S.coeff(m)), dense(A.d())));
}

}  // namespace

TEST_CASE("no higher operators: everything transfers to zero")
{
    for (const char* name : {"torus-2", "heisenberg"}) {
        Instance inst = build_instance(corpus_entry(name));
        Retract R = orthonormal_retract(inst.A);
        TransferredOperators T = transferred_operators(inst.A, R, 6);
        CHECK(T.degenerate);
        for (std::size_t k = 1; k < T.T.size(); ++k)
            CHECK(T.T[k].is_zero());
        SplittingOperator S = splitting_operator(inst.A, R, 6);
        for (std::size_t k = 1; k < S.s.size(); ++k)
            CHECK(S.s[k].is_zero());
        SplittingMap sm = splitting_map(inst.A, R, 6);
        CHECK(sm.map.coeff(0) == R.iota);
        CHECK(sm.map.top_exponent() == 0);
        PerturbedRetract PR = perturbed_retract(inst.A, R, 6);
        CHECK(PR.I.coeff(0) == R.iota);
        CHECK(PR.I.top_exponent() == 0);
        CHECK(PR.P.coeff(0) == R.p);
        CHECK(PR.H.coeff(0) == R.h);
    }
}

TEST_CASE("d = 0 with a nonzero Delta_1: only the one-letter word survives")
{
    Instance inst = build_instance(corpus_entry("torus-2-contraction"));
    Retract R = orthonormal_retract(inst.A);
    REQUIRE(R.h.is_zero());
    TransferredOperators T = transferred_operators(inst.A, R, 4);
    CHECK_FALSE(T.degenerate);
    CHECK(Matrix::from_map(T.T[1]) == Matrix::from_map(inst.A.delta(1)));
    CHECK(T.T[2].is_zero());
    CHECK_FALSE(T.report.passed());
    CHECK_FALSE(oracle::free_up_to(oracle::build(corpus_entry("torus-2-contraction")), 2));
}

TEST_CASE("closed: d Delta_1 iota p = -Delta_1 d iota p = 0")
{
    for (const char* name : {"heisenberg-jacobi", "heisenberg-r-jacobi", "filiform-4-jacobi"}) {
        Instance inst = build_instance(corpus_entry(name));
        Retract R = orthonormal_retract(inst.A);
        GradedMap lhs = inst.A.d() * inst.A.delta(1) * R.iota * R.p;
        GradedMap rhs = -(inst.A.delta(1) * inst.A.d() * R.iota * R.p);
        CHECK(lhs == rhs);
        CHECK(lhs.is_zero());
        CHECK(closed_check(inst.A, R, 6).passed());
    }
}

TEST_CASE("word bookkeeping")
{
    Instance inst = build_instance(corpus_entry("heisenberg-jacobi"));
    TransferredOperators T = transferred_operators(inst.A, orthonormal_retract(inst.A), 6);
    // 2^{k-1} compositions of k
    CHECK(T.words_total == 1 + 2 + 4 + 8 + 16 + 32);
    CHECK(T.words_skipped <= T.words_total);
}

TEST_CASE("degeneration verdict equals the freeness oracle and does not depend on the inner product")
{
    for (const auto& d : bundled_corpus()) {
        CAPTURE(d.name);
        Instance inst = build_instance(d);
        if (!validate_algebra(inst.A).passed() || !validate_bv(inst.A).passed())
            continue;
        const bool expected = oracle::free_up_to(oracle::build(d), 7);
        CHECK(transferred_operators(inst.A, orthonormal_retract(inst.A), 6).degenerate == expected);
        for (std::uint64_t seed : {1u, 2u}) {
            Retract R = build_retract(inst.A, InnerProduct::random(inst.A.space(), seed));
            CHECK(transferred_operators(inst.A, R, 6).degenerate == expected);
        }
    }
}

TEST_CASE("splitting on degenerate instances")
{
    for (const char* name : {"heisenberg-jacobi", "heisenberg-r-pi14", "filiform-4-jacobi", "contractible"}) {
        CAPTURE(name);
        Instance inst = build_instance(corpus_entry(name));
        Retract R = orthonormal_retract(inst.A);
        SplittingOperator S = splitting_operator(inst.A, R, 6);
        CHECK(S.report.passed());
        for (int m = 0; m <= 6; ++m)
            CHECK(oracle::is_zero(commutator_coeff(inst.A, S.S, m)));
        SplittingMap sm = splitting_map(inst.A, R, 6);
        CHECK(sm.report.passed());
        // T S = id: evaluate at hbar = 0 and project
        CHECK(Matrix::from_map(R.p * sm.map.coeff(0)) == Matrix::identity(R.H->dim()));
        CHECK(splitting_map(inst.A, R, 6).map.coeff(0) == R.iota);
        PerturbedRetract PR = perturbed_retract(inst.A, R, 6);
        CHECK(PR.report.passed());
    }
}

TEST_CASE("splitting operator fails its commutation on a non-degenerate instance")
{
    Instance inst = build_instance(corpus_entry("heisenberg-pi12"));
    Retract R = orthonormal_retract(inst.A);
    CHECK_FALSE(transferred_operators(inst.A, R, 6).degenerate);
    SplittingMap sm = splitting_map(inst.A, R, 6);
    CHECK_FALSE(sm.report.passed());
}
