#include "bvfrob/pipeline.hpp"

#include "bvfrob/checks.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace bvf {

const std::vector<std::string>& pipeline_stages()
{
    static const std::vector<std::string> stages = {"algebra", "bv",       "retract", "cyclic",   "degeneration",
                                                    "splitting", "goodbasis", "qme",     "frobenius"};
    return stages;
}

bool PipelineResult::passed() const
{
    for (const auto& s : stages)
        if (s.status == "fail")
            return false;
    return true;
}

std::string PipelineResult::first_failure() const
{
    for (const auto& s : stages)
        if (s.status == "fail")
            return s.stage;
    return "pass";
}

const StageResult* PipelineResult::stage(const std::string& name) const
{
    for (const auto& s : stages)
        if (s.stage == name)
            return &s;
    return nullptr;
}

namespace {

std::string hbar_power(int e)
{
    if (e == 0)
        return "";
    if (e == 1)
        return "hbar";
    return "hbar^" + std::to_string(e);
}

std::string join_terms(const std::vector<std::string>& terms)
{
    if (terms.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0)
            out += " + ";
        out += terms[i];
    }
    return out;
}

}  // namespace

std::string laurent_str(const LaurentScalar& x)
{
    std::vector<std::string> terms;
    for (const auto& [e, c] : x.terms()) {
        std::string h = hbar_power(e);
        terms.push_back(h.empty() ? to_string(c) : to_string(c) + "*" + h);
    }
    std::string s = join_terms(terms);
    if (!x.exact())
        s += " + O(hbar^" + std::to_string(x.precision() + 1) + ")";
    return s;
}

std::string laurent_str(const LaurentVec& x, const GradedSpace& V)
{
    std::vector<std::string> terms;
    for (const auto& [e, v] : x.terms()) {
        std::string h = hbar_power(e);
        std::string body = vec_str(V, v);
        terms.push_back(h.empty() ? body : "(" + body + ")*" + h);
    }
    std::string s = join_terms(terms);
    if (!x.exact())
        s += " + O(hbar^" + std::to_string(x.precision() + 1) + ")";
    return s;
}

std::string series_str(const ScalarTau& s)
{
    std::vector<std::string> terms;
    for (const auto& [m, c] : s.terms()) {
        if (c.is_zero())
            continue;
        std::string cs = laurent_str(c);
        if (m.empty())
            terms.push_back(cs);
        else
            terms.push_back("(" + cs + ")*" + monomial_str(*s.vars(), m));
    }
    return join_terms(terms);
}

std::string series_str(const VecTau& s, const GradedSpace& V)
{
    std::vector<std::string> terms;
    for (const auto& [m, c] : s.terms()) {
        if (c.is_zero())
            continue;
        std::string cs = "(" + laurent_str(c, V) + ")";
        terms.push_back(m.empty() ? cs : cs + "*" + monomial_str(*s.vars(), m));
    }
    return join_terms(terms);
}

namespace {

Json matrix_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.push_back(to_string(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

struct State {
    Instance inst;
    InnerProduct ip;
    Retract R;
    PerturbedRetract PR;
    GoodBasis gb;
    QmeSolution sol;
    int N = 4, M = 6, kmax = 6;
};

void run_stage(const std::string& name, State& st, StageResult& out)
{
    const BVAlgebra& A = st.inst.A;
    const auto& V = *A.space();
    if (name == "algebra") {
        out.report = validate_algebra(A);
        out.data["dim"] = A.dim();
        out.data["unit"] = V.label(A.unit());
        out.data["degrees"] = {V.min_degree(), V.max_degree()};
    } else if (name == "bv") {
        out.report = validate_bv(A);
        out.data["K"] = A.K();
        out.data["relations_checked_up_to"] = 2 * A.K();
    } else if (name == "retract") {
        st.R = build_retract(A, st.ip);
        out.report = verify_retract(A, st.R);
        const auto& H = *st.R.H;
        std::map<int, int> betti;
        Json basis = Json::array();
        for (std::size_t i = 0; i < H.dim(); ++i) {
            ++betti[H.degree(i)];
            basis.push_back({{"label", H.label(i)},
                             {"degree", H.degree(i)},
                             {"representative", vec_str(V, st.R.iota.column(i))}});
        }
        Json b = Json::object();
        for (const auto& [deg, n] : betti)
            b[std::to_string(deg)] = n;
        out.data["betti"] = b;
        out.data["cohomology_basis"] = basis;
        out.data["inner_product"] = st.ip.kind();
        out.data["h_nonzero_entries"] = st.R.h.nnz();
    } else if (name == "cyclic") {
        if (!st.inst.trace)
            throw InputError("instance has no trace; the cyclic stage needs one");
        out.report = validate_cyclic(A, *st.inst.trace, st.R);
        out.data["trace_degree"] = st.inst.trace->n;
        out.data["cohomology_pairing"] = matrix_json(cohomology_pairing(A, *st.inst.trace, st.R));
    } else if (name == "degeneration") {
        TransferredOperators T = transferred_operators(A, st.R, st.kmax);
        out.report = T.report;
        out.report.append(closed_check(A, st.R, st.kmax));
        out.data["words_total"] = T.words_total;
        out.data["words_skipped"] = T.words_skipped;
        out.data["degenerate"] = T.degenerate;
        Json nonzero = Json::array();
        for (std::size_t k = 1; k < T.T.size(); ++k)
            if (!T.T[k].is_zero())
                nonzero.push_back(k);
        out.data["nonzero_transferred"] = nonzero;
    } else if (name == "splitting") {
        SplittingOperator S = splitting_operator(A, st.R, st.M);
        SplittingMap sm = splitting_map(A, st.R, st.M);
        st.PR = perturbed_retract(A, st.R, st.M);
        out.report.append(S.report, "S.");
        out.report.append(sm.report, "map.");
        out.report.append(st.PR.report, "perturbed.");
        out.data["S_exact"] = S.S.exact();
        out.data["perturbed_exact"] = st.PR.exact;
        out.data["S_top_exponent"] = S.S.top_exponent();
    } else if (name == "goodbasis") {
        const Trace& tr = *st.inst.trace;
        out.report = h_compatibility(A, st.R, tr);
        st.gb = good_basis(A, st.R, tr, st.M);
        out.report.append(st.gb.report);
        std::vector<LaurentVec> classes;
        for (const auto& a : st.gb.alpha)
            classes.push_back(cohomology_class(A, st.PR, a));
        out.report.append(opposite_filtration_check(A, tr, st.gb.alpha, classes, 3), "opposite.");
        Json alpha = Json::object();
        for (std::size_t i = 0; i < st.gb.alpha.size(); ++i)
            alpha[st.R.H->label(i)] = laurent_str(st.gb.alpha[i], V);
        out.data["alpha"] = alpha;
    } else if (name == "qme") {
        st.sol = solve_qme(A, st.PR, st.gb, *st.R.H, st.N, st.M);
        out.report = st.sol.report;
        out.report.append(verify_qme(A, st.PR, st.gb, st.sol));
        out.data["gauge"] = st.sol.gauge;
        Json counts = Json::object();
        for (int n = 1; n <= st.N; ++n)
            counts[std::to_string(n)] = st.sol.Gamma.homogeneous_part(n).terms().size();
        out.data["terms_by_order"] = counts;
        out.data["Gamma"] = series_str(st.sol.Gamma, V);
    } else if (name == "frobenius") {
        if (st.R.iota.column(0) != A.unit_vector())
            throw MathError("the first cohomology basis element is not the unit class");
        FlatCoordinates fc = flat_coordinates(A, st.PR, st.sol);
        TangentFrame fr = tangent_frame(A, st.PR, *st.inst.trace, st.sol, fc);
        StructureConstants sc = structure_constants(fr, st.sol);
        FrobeniusData F = metric_and_potential(st.gb.K0, *st.R.H, sc, fr);
        out.report.append(fc.report, "flat.");
        out.report.append(fr.report, "frame.");
        out.report.append(sc.report, "structure.");
        out.report.append(verify_frobenius(F, st.N));
        out.report.notes.push_back("flatness_surrogate: K(hbar d_i e^{Gamma/hbar}, hbar d_j e^{Gamma/hbar}) = g(i,j) "
                                   "at every retained tau-order, a computable stand-in for flatness of the metric");
        out.report.notes.push_back("Phi is normalized to have no terms below cubic order");
        out.data["coordinate_change_hbar_free"] = fc.hbar_free;
        Json phi = Json::object();
        for (std::size_t i = 0; i < fc.phi.size(); ++i)
            phi[st.sol.vars->name(i)] = series_str(fc.phi[i]);
        out.data["flat_coordinates"] = phi;
        out.data["metric"] = matrix_json(F.g);
        Json consts = Json::array();
        const auto& H = *st.R.H;
        for (std::size_t i = 0; i < F.mu; ++i)
            for (std::size_t j = 0; j < F.mu; ++j)
                for (std::size_t k = 0; k < F.mu; ++k)
                    if (!F.A[i][j][k].is_zero())
                        consts.push_back({{"i", H.label(i)},
                                          {"j", H.label(j)},
                                          {"k", H.label(k)},
                                          {"A", series_str(F.A[i][j][k])}});
        out.data["structure_constants"] = consts;
        out.data["potential"] = series_str(F.Phi);
        out.data["structure_constant_order"] = F.order;
    }
}

}  // namespace

PipelineResult run_pipeline(const Description& d, const PipelineOptions& opt)
{
    PipelineResult res;
    res.instance = d.name;
    auto resolve = [](Parameter& p, const std::optional<int>& file, const std::optional<int>& flag) {
        if (file) {
            p.value = *file;
            p.source = "file";
        }
        if (flag) {
            p.value = *flag;
            p.source = "flag";
        }
    };
    resolve(res.tau_order, d.truncation.tau_order, opt.tau_order);
    resolve(res.hbar_order, d.truncation.hbar_order, opt.hbar_order);
    resolve(res.kmax, d.truncation.kmax, opt.kmax);
    if (res.tau_order.value < 1 || res.hbar_order.value < 0 || res.kmax.value < 1)
        throw InputError("truncation parameters must satisfy tau-order >= 1, hbar-order >= 0, kmax >= 1");

    const auto& stages = pipeline_stages();
    auto last = std::find(stages.begin(), stages.end(), opt.stop_after);
    if (last == stages.end())
        throw InputError("unknown stage '" + opt.stop_after + "'");

    State st;
    st.inst = build_instance(d);
    st.N = res.tau_order.value;
    st.M = res.hbar_order.value;
    st.kmax = res.kmax.value;
    InnerProductSpec spec = st.inst.ip_spec;
    if (opt.seed) {
        spec.kind = "random";
        spec.seed = *opt.seed;
    }
    st.ip = make_inner_product(st.inst, spec);
    res.inner_product = spec.kind == "random" ? "random(seed " + std::to_string(spec.seed) + ")" : st.ip.kind();

    bool stopped = false;
    for (auto it = stages.begin(); it != std::next(last); ++it) {
        StageResult sr;
        sr.stage = *it;
        if (stopped) {
            sr.status = "skipped";
            res.stages.push_back(std::move(sr));
            continue;
        }
        try {
            run_stage(*it, st, sr);
        } catch (const MathError& e) {
            sr.error = e.what();
        }
        sr.status = sr.report.passed() && sr.error.empty() ? "pass" : "fail";
        stopped = sr.status == "fail";
        res.stages.push_back(std::move(sr));
    }
    return res;
}

Json report_json(const PipelineResult& r, const std::string& command)
{
    Json j;
    j["format"] = "bvfrob-report";
    j["version"] = 1;
    j["instance"] = r.instance;
    j["command"] = command;
    auto param = [](const Parameter& p) { return Json{{"value", p.value}, {"source", p.source}}; };
    j["parameters"] = {{"tau_order", param(r.tau_order)},
                       {"hbar_order", param(r.hbar_order)},
                       {"kmax", param(r.kmax)},
                       {"inner_product", r.inner_product}};
    j["stages"] = Json::array();
    for (const auto& s : r.stages) {
        Json sj = {{"stage", s.stage}, {"status", s.status}};
        if (s.status != "skipped") {
            Json checks = Json::array();
            for (const auto& c : s.report.checks) {
                Json cj = {{"name", c.name}, {"passed", c.passed}, {"cases", c.cases},
                           {"violation_count", c.violations.size()}};
                Json v = Json::array();
                for (std::size_t i = 0; i < c.violations.size() && i < 20; ++i)
                    v.push_back(c.violations[i]);
                cj["violations"] = v;
                checks.push_back(cj);
            }
            sj["checks"] = checks;
            sj["data"] = s.data;
            if (!s.report.notes.empty())
                sj["notes"] = s.report.notes;
            if (!s.error.empty())
                sj["error"] = s.error;
        }
        j["stages"].push_back(sj);
    }
    j["verdict"] = r.passed() ? "pass" : "fail";
    j["first_failure"] = r.first_failure();
    return j;
}

std::string report_markdown(const PipelineResult& r, const std::string& command)
{
    std::ostringstream os;
    os << "# " << r.instance << " (" << command << ")\n\n";
    os << "| parameter | value | source |\n|---|---|---|\n";
    os << "| tau-order | " << r.tau_order.value << " | " << r.tau_order.source << " |\n";
    os << "| hbar-order | " << r.hbar_order.value << " | " << r.hbar_order.source << " |\n";
    os << "| kmax | " << r.kmax.value << " | " << r.kmax.source << " |\n";
    os << "| inner product | " << r.inner_product << " | |\n\n";
    for (const auto& s : r.stages) {
        std::string status = s.status;
        for (auto& ch : status)
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        os << "## " << s.stage << ": " << status << "\n\n";
        if (s.status == "skipped")
            continue;
        if (!s.error.empty())
            os << "error: " << s.error << "\n\n";
        for (const auto& c : s.report.checks) {
            os << "- " << (c.passed ? "pass" : "FAIL") << " `" << c.name << "` (" << c.cases << " cases";
            if (!c.passed)
                os << ", " << c.violations.size() << " violations";
            os << ")\n";
            for (std::size_t i = 0; i < c.violations.size() && i < 5; ++i)
                os << "  - " << c.violations[i] << "\n";
        }
        for (const auto& n : s.report.notes)
            os << "- note: " << n << "\n";
        if (!s.data.empty()) {
            os << "\n```json\n" << s.data.dump(2) << "\n```\n";
        }
        os << "\n";
    }
    os << "verdict: " << (r.passed() ? "pass" : "fail") << " (first failure: " << r.first_failure() << ")\n";
    return os.str();
}

}  // namespace bvf
