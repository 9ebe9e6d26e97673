#include "bvfrob/degeneration.hpp"
#include "bvfrob/checks.hpp"

namespace bvf {

void expect_zero_series(Check& check, const OpSeries& f, int M, const std::string& what)
{
    const int top = std::min(M, f.precision());
    for (int k = 0; k <= top; ++k)
        expect_zero(check, f.coeff(k), what + " [hbar^" + std::to_string(k) + "]");
}

namespace {

int degree_span(const GradedSpace& V) { return V.dim() ? V.max_degree() - V.min_degree() : 0; }

// W[k] = D_k iota + sum_{j<k} D_j h W[k-j]
std::vector<GradedMap> word_sums(const BVAlgebra& A, const Retract& R, int k_max)
{
    std::vector<GradedMap> W(k_max + 1);
    W[0] = GradedMap::zero(R.H, A.space(), 1);
    const int span = degree_span(*A.space());
    for (int k = 1; k <= k_max; ++k) {
        GradedMap acc = GradedMap::zero(R.H, A.space(), 1 - 2 * k);
        if (2 * k - 1 > span) {
            W[k] = std::move(acc);  // no nonzero map of this degree exists
            continue;
        }
        GradedMap Dk = A.delta(k);
        if (!Dk.is_zero())
            acc += Dk * R.iota;
        for (int j = 1; j < k; ++j) {
            GradedMap Dj = A.delta(j);
            if (Dj.is_zero() || W[k - j].is_zero())
                continue;
            acc += Dj * (R.h * W[k - j]);
        }
        W[k] = std::move(acc);
    }
    return W;
}

}  // namespace

TransferredOperators transferred_operators(const BVAlgebra& A, const Retract& R, int k_max)
{
    TransferredOperators out;
    out.W = word_sums(A, R, k_max);
    out.T.resize(k_max + 1);
    out.T[0] = GradedMap::zero(R.H, R.H, 1);

    // live[k]: number of words of weight k whose operators are all nonzero
    const int span = degree_span(*A.space());
    std::vector<std::size_t> live(k_max + 1, 0);
    live[0] = 1;
    std::size_t alive = 0;
    for (int k = 1; k <= k_max; ++k) {
        for (int j = 1; j <= k; ++j)
            if (!A.delta(j).is_zero())
                live[k] += live[k - j];
        out.words_total += std::size_t(1) << (k - 1);
        if (2 * k - 1 <= span)
            alive += live[k];
    }
    out.words_skipped = out.words_total - alive;

    auto& deg = out.report.add("degree_bookkeeping");
    auto& hdr = out.report.add("transferred_vanish");
    for (int k = 1; k <= k_max; ++k) {
        out.T[k] = R.p * out.W[k];
        ++deg.cases;
        if (!out.T[k].is_zero() && out.T[k].degree() != 1 - 2 * k)
            deg.fail("T_" + std::to_string(k) + " has degree " + std::to_string(out.T[k].degree()));
        expect_zero(hdr, out.T[k], "T_" + std::to_string(k));
    }
    out.degenerate = hdr.passed;
    out.report.notes.push_back("k_max=" + std::to_string(k_max) + " words=" + std::to_string(out.words_total) +
                               " skipped=" + std::to_string(out.words_skipped));
    return out;
}

Report closed_check(const BVAlgebra& A, const Retract& R, int k_max)
{
    Report rep;
    auto W = word_sums(A, R, k_max);
    auto& c = rep.add("closed");
    for (int k = 1; k <= k_max; ++k)
        expect_zero(c, A.d() * W[k] * R.p, "d W_" + std::to_string(k) + " p");
    return rep;
}

SplittingOperator splitting_operator(const BVAlgebra& A, const Retract& R, int M)
{
    SplittingOperator out;
    auto W = word_sums(A, R, M + 1);
    out.s.push_back(GradedMap::identity(A.space()));
    // s_{M+1} is only needed for the last instance of the equation for S.
    for (int k = 1; k <= M + 1; ++k)
        out.s.push_back(R.h * W[k] * R.p - A.delta(k) * R.h);

    // s_k has degree -2k, so it vanishes once 2k exceeds the degree span of A.
    const int span = degree_span(*A.space());
    const bool exact = 2 * (M + 1) > span;
    std::vector<GradedMap> terms(out.s.begin(), out.s.begin() + M + 1);
    out.S = OpSeries(A.space(), A.space(), 0, std::move(terms), exact ? kExact : M);

    auto& eq = out.report.add("equation_for_S");
    for (int k = 0; k < M; ++k) {
        // D_1 s_k + ... + D_k s_1 + D_{k+1} = s_{k+1} d - d s_{k+1}
        GradedMap lhs = A.delta(k + 1);
        for (int i = 1; i <= k; ++i) {
            GradedMap Di = A.delta(i);
            if (!Di.is_zero() && !out.s[k + 1 - i].is_zero())
                lhs += Di * out.s[k + 1 - i];
        }
        GradedMap rhs = out.s[k + 1] * A.d() - A.d() * out.s[k + 1];
        expect_zero(eq, lhs - rhs, "k=" + std::to_string(k));
    }
    auto& commute = out.report.add("delta_S_minus_S_d");
    OpSeries Delta = delta_total(A, M);
    OpSeries diff = compose(Delta, out.S) - compose(out.S, OpSeries::constant(A.d()));
    expect_zero_series(commute, diff, M, "Delta S - S d");
    return out;
}

SplittingMap splitting_map(const BVAlgebra& A, const Retract& R, int M)
{
    SplittingMap out;
    SplittingOperator sp = splitting_operator(A, R, M);
    out.map = compose(sp.S, OpSeries::constant(R.iota));
    auto& closed = out.report.add("image_closed");
    expect_zero_series(closed, compose(delta_total(A, M), out.map), M, "Delta S iota");
    auto& lead = out.report.add("leading_term_iota");
    expect_zero(lead, out.map.coeff(0) - R.iota, "S iota - iota at hbar^0");
    return out;
}

namespace {

// sum_{n>=0} X^n for an operator series X that strictly lowers the degree of A.
OpSeries geometric_sum(const OpSeries& X, const SpacePtr& space)
{
    OpSeries sum = OpSeries::identity(space);
    OpSeries power = OpSeries::identity(space);
    const std::size_t limit = space->dim() + 2;
    for (std::size_t n = 1; n <= limit; ++n) {
        power = compose(X, power);
        if (power.is_zero())
            return sum;
        sum = sum + power;
    }
    throw MathError("perturbation series does not terminate");
}

}  // namespace

PerturbedRetract perturbed_retract(const BVAlgebra& A, const Retract& R, int M)
{
    PerturbedRetract out;
    out.M = M;
    const OpSeries delta = delta_perturbation(A, A.K());
    const OpSeries h = OpSeries::constant(R.h);
    OpSeries hd = geometric_sum(compose(h, delta), A.space());
    OpSeries dh = geometric_sum(compose(delta, h), A.space());
    OpSeries I = compose(hd, OpSeries::constant(R.iota));
    OpSeries P = compose(OpSeries::constant(R.p), dh);
    OpSeries H = compose(hd, h);
    out.exact = I.top_exponent() <= M && P.top_exponent() <= M && H.top_exponent() <= M;
    out.I = I.truncated(M);
    out.P = P.truncated(M);
    out.H = H.truncated(M);

    const OpSeries Delta = delta_total(A, M);
    const OpSeries idA = OpSeries::identity(A.space());
    const OpSeries idH = OpSeries::identity(R.H);
    auto& r = out.report;
    expect_zero_series(r.add("P_I_identity"), compose(out.P, out.I) - idH, M, "P'I' - id");
    expect_zero_series(r.add("homotopy"),
                       compose(Delta, out.H) + compose(out.H, Delta) - (compose(out.I, out.P) - idA), M,
                       "Delta H' + H' Delta - (I'P' - id)");
    expect_zero_series(r.add("Delta_I"), compose(Delta, out.I), M, "Delta I'");
    expect_zero_series(r.add("P_Delta"), compose(out.P, Delta), M, "P' Delta");
    expect_zero_series(r.add("transferred_differential"), compose(compose(out.P, Delta), out.I), M, "P' Delta I'");
    expect_zero_series(r.add("H_squared"), compose(out.H, out.H), M, "H'H'");
    expect_zero_series(r.add("H_I"), compose(out.H, out.I), M, "H'I'");
    expect_zero_series(r.add("P_H"), compose(out.P, out.H), M, "P'H'");
    r.notes.push_back(out.exact ? "perturbed retract exact (all terms within hbar^M)"
                                : "perturbed retract truncated at hbar^" + std::to_string(M));
    return out;
}

}  // namespace bvf
