#include "bvfrob/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace bvf {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what)
{
    throw InputError(where + ": " + what);
}

const Json& need(const Json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        bad(where, "missing field '" + key + "'");
    return j.at(key);
}

Scalar scalar_of(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Scalar(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_scalar(j.get<std::string>());
        } catch (const InputError& e) {
            bad(where, e.what());
        }
    }
    bad(where, "expected a rational given as a string or an integer");
}

int int_of(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        bad(where, "expected an integer");
    return j.get<int>();
}

std::string string_of(const Json& j, const std::string& where)
{
    if (!j.is_string())
        bad(where, "expected a string");
    return j.get<std::string>();
}

const Json& array_of(const Json& j, const std::string& where, std::size_t size = 0)
{
    if (!j.is_array())
        bad(where, "expected an array");
    if (size && j.size() != size)
        bad(where, "expected " + std::to_string(size) + " entries");
    return j;
}

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

std::size_t generator_index(const Json& j, std::size_t dim, const std::string& where)
{
    int g = int_of(j, where);
    if (g < 1 || static_cast<std::size_t>(g) > dim)
        bad(where, "generator X" + std::to_string(g) + " out of range 1.." + std::to_string(dim));
    return static_cast<std::size_t>(g - 1);
}

Multivector multivector_of(const Json& j, std::size_t dim, const std::string& where)
{
    Multivector w;
    array_of(j, where);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string wt = at(where, t);
        const Json& term = array_of(j[t], wt, 2);
        std::vector<std::size_t> word;
        array_of(term[0], wt + "[0]");
        for (std::size_t k = 0; k < term[0].size(); ++k)
            word.push_back(generator_index(term[0][k], dim, at(wt + "[0]", k)));
        w.terms.emplace_back(std::move(word), scalar_of(term[1], wt + "[1]"));
    }
    return w;
}

Json multivector_json(const Multivector& w)
{
    std::vector<std::pair<std::vector<std::size_t>, Scalar>> terms;
    for (const auto& t : w.terms)
        if (sgn(t.second) != 0)
            terms.push_back(t);
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Json out = Json::array();
    for (const auto& [word, c] : terms) {
        Json idx = Json::array();
        for (auto i : word)
            idx.push_back(i + 1);
        out.push_back(Json::array({idx, to_string(c)}));
    }
    return out;
}

}  // namespace

Description parse_description(const Json& j)
{
    if (!j.is_object())
        bad("$", "instance must be a JSON object");
    Description d;
    if (string_of(need(j, "format", "$"), "$.format") != kInstanceFormat)
        bad("$.format", std::string("expected '") + kInstanceFormat + "'");
    if (int_of(need(j, "version", "$"), "$.version") != kInstanceVersion)
        bad("$.version", "unsupported version");
    d.name = string_of(need(j, "name", "$"), "$.name");

    static const std::vector<std::string> known = {"format", "version", "name", "generator", "basis", "unit",
                                                   "mult", "deltas", "trace", "inner_product", "truncation",
                                                   "expect", "perturbation"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            bad("$." + key, "unknown field");

    if (j.contains("generator")) {
        if (j.contains("basis") || j.contains("mult") || j.contains("deltas") || j.contains("unit"))
            bad("$", "give either 'generator' or an explicit basis/mult/deltas block, not both");
        const Json& g = j.at("generator");
        const std::string w = "$.generator";
        if (string_of(need(g, "type", w), w + ".type") != "chevalley-eilenberg")
            bad(w + ".type", "only 'chevalley-eilenberg' is supported");
        CEBlock ce;
        int dim = int_of(need(g, "dim", w), w + ".dim");
        if (dim < 0 || dim > 8)
            bad(w + ".dim", "dimension must lie in 0..8");
        ce.dim = static_cast<std::size_t>(dim);
        if (g.contains("brackets")) {
            const Json& br = array_of(g.at("brackets"), w + ".brackets");
            for (std::size_t t = 0; t < br.size(); ++t) {
                const std::string wt = at(w + ".brackets", t);
                array_of(br[t], wt, 4);
                Bracket b;
                b.i = generator_index(br[t][0], ce.dim, wt + "[0]");
                b.j = generator_index(br[t][1], ce.dim, wt + "[1]");
                b.k = generator_index(br[t][2], ce.dim, wt + "[2]");
                b.c = scalar_of(br[t][3], wt + "[3]");
                ce.brackets.push_back(b);
            }
        }
        if (g.contains("pi"))
            ce.pi = multivector_of(g.at("pi"), ce.dim, w + ".pi");
        if (g.contains("eta"))
            ce.eta = multivector_of(g.at("eta"), ce.dim, w + ".eta");
        for (const auto& [key, value] : g.items())
            if (key != "type" && key != "dim" && key != "brackets" && key != "pi" && key != "eta")
                bad(w + "." + key, "unknown field");
        d.generator = ce;
    } else {
        const Json& basis = array_of(need(j, "basis", "$"), "$.basis");
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const std::string w = at("$.basis", i);
            d.basis.push_back({string_of(need(basis[i], "label", w), w + ".label"),
                               int_of(need(basis[i], "degree", w), w + ".degree")});
        }
        d.unit = string_of(need(j, "unit", "$"), "$.unit");
        if (j.contains("mult")) {
            const Json& m = array_of(j.at("mult"), "$.mult");
            for (std::size_t t = 0; t < m.size(); ++t) {
                const std::string w = at("$.mult", t);
                array_of(m[t], w, 4);
                d.mult.emplace_back(string_of(m[t][0], w + "[0]"), string_of(m[t][1], w + "[1]"),
                                    string_of(m[t][2], w + "[2]"), scalar_of(m[t][3], w + "[3]"));
            }
        }
        if (j.contains("deltas")) {
            const Json& ds = array_of(j.at("deltas"), "$.deltas");
            for (std::size_t k = 0; k < ds.size(); ++k) {
                const std::string wk = at("$.deltas", k);
                array_of(ds[k], wk);
                std::vector<std::tuple<std::string, std::string, Scalar>> entries;
                for (std::size_t t = 0; t < ds[k].size(); ++t) {
                    const std::string w = at(wk, t);
                    array_of(ds[k][t], w, 3);
                    entries.emplace_back(string_of(ds[k][t][0], w + "[0]"), string_of(ds[k][t][1], w + "[1]"),
                                         scalar_of(ds[k][t][2], w + "[2]"));
                }
                d.deltas.push_back(std::move(entries));
            }
        }
    }

    if (j.contains("trace")) {
        const Json& t = j.at("trace");
        TraceSpec ts;
        ts.degree = int_of(need(t, "degree", "$.trace"), "$.trace.degree");
        const Json& f = array_of(need(t, "functional", "$.trace"), "$.trace.functional");
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::string w = at("$.trace.functional", i);
            array_of(f[i], w, 2);
            ts.functional.emplace_back(string_of(f[i][0], w + "[0]"), scalar_of(f[i][1], w + "[1]"));
        }
        d.trace = ts;
    }
    if (j.contains("inner_product")) {
        const Json& ip = j.at("inner_product");
        const std::string w = "$.inner_product";
        d.inner_product.kind = string_of(need(ip, "kind", w), w + ".kind");
        const auto& kind = d.inner_product.kind;
        if (kind != "default" && kind != "orthonormal" && kind != "star" && kind != "random" && kind != "explicit")
            bad(w + ".kind", "unknown inner product kind '" + kind + "'");
        if (kind == "random") {
            const Json& s = need(ip, "seed", w);
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
                bad(w + ".seed", "expected a nonnegative integer");
            d.inner_product.seed = s.get<std::uint64_t>();
        }
        if (kind == "explicit") {
            const Json& e = array_of(need(ip, "entries", w), w + ".entries");
            for (std::size_t i = 0; i < e.size(); ++i) {
                const std::string wi = at(w + ".entries", i);
                array_of(e[i], wi, 3);
                d.inner_product.entries.emplace_back(string_of(e[i][0], wi + "[0]"), string_of(e[i][1], wi + "[1]"),
                                                     scalar_of(e[i][2], wi + "[2]"));
            }
        }
    }
    if (j.contains("truncation")) {
        const Json& t = j.at("truncation");
        auto read = [&](const char* key, std::optional<int>& out, int lo) {
            if (!t.contains(key))
                return;
            int v = int_of(t.at(key), std::string("$.truncation.") + key);
            if (v < lo)
                bad(std::string("$.truncation.") + key, "must be at least " + std::to_string(lo));
            out = v;
        };
        read("tau_order", d.truncation.tau_order, 1);
        read("hbar_order", d.truncation.hbar_order, 0);
        read("kmax", d.truncation.kmax, 1);
    }
    if (j.contains("expect"))
        d.expect = j.at("expect");
    if (j.contains("perturbation"))
        d.perturbation = j.at("perturbation");
    return d;
}

Description load_description(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return parse_description(j);
}

Json to_json(const Description& d)
{
    Json j;
    j["format"] = kInstanceFormat;
    j["version"] = kInstanceVersion;
    j["name"] = d.name;
    if (d.generator) {
        const auto& ce = *d.generator;
        Json g;
        g["type"] = "chevalley-eilenberg";
        g["dim"] = ce.dim;
        auto brackets = ce.brackets;
        std::sort(brackets.begin(), brackets.end(), [](const Bracket& a, const Bracket& b) {
            return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
        });
        g["brackets"] = Json::array();
        for (const auto& b : brackets)
            if (sgn(b.c) != 0)
                g["brackets"].push_back(Json::array({b.i + 1, b.j + 1, b.k + 1, to_string(b.c)}));
        if (!ce.pi.is_zero())
            g["pi"] = multivector_json(ce.pi);
        if (!ce.eta.is_zero())
            g["eta"] = multivector_json(ce.eta);
        j["generator"] = g;
    } else {
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < d.basis.size(); ++i)
            pos.emplace(d.basis[i].label, i);
        auto p = [&](const std::string& s) {
            auto it = pos.find(s);
            return it == pos.end() ? d.basis.size() : it->second;
        };
        j["basis"] = Json::array();
        for (const auto& b : d.basis)
            j["basis"].push_back({{"label", b.label}, {"degree", b.degree}});
        j["unit"] = d.unit;
        auto mult = d.mult;
        std::stable_sort(mult.begin(), mult.end(), [&](const auto& a, const auto& b) {
            return std::make_tuple(p(std::get<0>(a)), p(std::get<1>(a)), p(std::get<2>(a))) <
                   std::make_tuple(p(std::get<0>(b)), p(std::get<1>(b)), p(std::get<2>(b)));
        });
        j["mult"] = Json::array();
        for (const auto& [a, b, c, s] : mult)
            if (sgn(s) != 0)
                j["mult"].push_back(Json::array({a, b, c, to_string(s)}));
        j["deltas"] = Json::array();
        for (auto entries : d.deltas) {
            std::stable_sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
                return std::make_pair(p(std::get<0>(a)), p(std::get<1>(a))) <
                       std::make_pair(p(std::get<0>(b)), p(std::get<1>(b)));
            });
            Json dk = Json::array();
            for (const auto& [s, t, c] : entries)
                if (sgn(c) != 0)
                    dk.push_back(Json::array({s, t, to_string(c)}));
            j["deltas"].push_back(dk);
        }
        while (j["deltas"].size() > 1 && j["deltas"].back().empty())
            j["deltas"].erase(j["deltas"].size() - 1);
    }
    if (d.trace) {
        Json f = Json::array();
        for (const auto& [label, c] : d.trace->functional)
            if (sgn(c) != 0)
                f.push_back(Json::array({label, to_string(c)}));
        j["trace"] = {{"degree", d.trace->degree}, {"functional", f}};
    }
    if (d.inner_product.kind != "default") {
        Json ip = {{"kind", d.inner_product.kind}};
        if (d.inner_product.kind == "random")
            ip["seed"] = d.inner_product.seed;
        if (d.inner_product.kind == "explicit") {
            ip["entries"] = Json::array();
            for (const auto& [a, b, c] : d.inner_product.entries)
                ip["entries"].push_back(Json::array({a, b, to_string(c)}));
        }
        j["inner_product"] = ip;
    }
    Json t = Json::object();
    if (d.truncation.tau_order)
        t["tau_order"] = *d.truncation.tau_order;
    if (d.truncation.hbar_order)
        t["hbar_order"] = *d.truncation.hbar_order;
    if (d.truncation.kmax)
        t["kmax"] = *d.truncation.kmax;
    if (!t.empty())
        j["truncation"] = t;
    if (!d.expect.empty())
        j["expect"] = d.expect;
    if (!d.perturbation.empty())
        j["perturbation"] = d.perturbation;
    return j;
}

Json canonicalize(const Json& j) { return to_json(parse_description(j)); }

void save_description(const Description& d, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << to_json(d).dump(2) << "\n";
}

Instance build_instance(const Description& d)
{
    Instance inst;
    inst.name = d.name;
    inst.ip_spec = d.inner_product;
    if (d.generator) {
        const auto& ce = *d.generator;
        CEModel model{d.name, ce.dim, ce.brackets};
        inst.A = generate_jacobi_model(model, ce.pi, ce.eta);
        inst.ext.emplace(ce.dim);
        if (!d.trace)
            inst.trace = Trace{top_trace(*inst.ext), static_cast<int>(ce.dim)};
    } else {
        auto space = std::make_shared<const GradedSpace>(d.basis);
        const auto& V = *space;
        auto index = [&](const std::string& label, const std::string& where) {
            if (auto i = V.find(label))
                return *i;
            bad(where, "unknown basis label '" + label + "'");
        };
        const std::size_t unit = index(d.unit, "$.unit");
        std::vector<MultEntry> mult;
        for (std::size_t t = 0; t < d.mult.size(); ++t) {
            const auto& [a, b, c, s] = d.mult[t];
            const std::string w = at("$.mult", t);
            mult.push_back({index(a, w + "[0]"), index(b, w + "[1]"), index(c, w + "[2]"), s});
        }
        std::vector<GradedMap> deltas;
        for (std::size_t k = 0; k < d.deltas.size(); ++k) {
            GradedMap m(space, space, 1 - 2 * static_cast<int>(k));
            for (std::size_t t = 0; t < d.deltas[k].size(); ++t) {
                const auto& [s, tg, c] = d.deltas[k][t];
                const std::string w = at(at("$.deltas", k), t);
                std::size_t col = index(s, w + "[0]"), row = index(tg, w + "[1]");
                if (V.degree(row) != V.degree(col) + m.degree())
                    bad(w, "Delta_" + std::to_string(k) + " must have degree " + std::to_string(m.degree()) + " (" +
                               s + " -> " + tg + ")");
                m.add_to(row, col, c);
            }
            deltas.push_back(std::move(m));
        }
        if (deltas.empty())
            deltas.push_back(GradedMap::zero(space, space, 1));
        inst.A = BVAlgebra(space, unit, mult, std::move(deltas));
    }
    if (d.trace) {
        const auto& V = *inst.A.space();
        Trace tr{zero_vec(V.dim()), d.trace->degree};
        for (std::size_t i = 0; i < d.trace->functional.size(); ++i) {
            const auto& [label, c] = d.trace->functional[i];
            const std::string w = at("$.trace.functional", i);
            auto idx = V.find(label);
            if (!idx)
                bad(w, "unknown basis label '" + label + "'");
            if (V.degree(*idx) != tr.n)
                bad(w, "trace entry '" + label + "' is not in degree " + std::to_string(tr.n));
            tr.functional[*idx] += c;
        }
        inst.trace = tr;
    }
    return inst;
}

InnerProduct make_inner_product(const Instance& inst, const InnerProductSpec& spec)
{
    const auto& space = inst.A.space();
    std::string kind = spec.kind;
    if (kind == "default")
        kind = inst.ext ? "star" : "orthonormal";
    if (kind == "orthonormal")
        return InnerProduct::orthonormal(space);
    if (kind == "star") {
        if (!inst.ext)
            throw InputError("$.inner_product: 'star' needs a generated Chevalley-Eilenberg model");
        return star_inner_product(*inst.ext, inst.A);
    }
    if (kind == "random")
        return InnerProduct::random(space, spec.seed);
    Matrix full(space->dim(), space->dim());
    for (std::size_t i = 0; i < spec.entries.size(); ++i) {
        const auto& [a, b, c] = spec.entries[i];
        const std::string w = at("$.inner_product.entries", i);
        auto ia = space->find(a), ib = space->find(b);
        if (!ia)
            bad(w, "unknown basis label '" + a + "'");
        if (!ib)
            bad(w, "unknown basis label '" + b + "'");
        full(*ia, *ib) = c;
        full(*ib, *ia) = c;
    }
    InnerProduct ip = InnerProduct::from_full(space, full);
    if (!ip.positive_definite())
        throw InputError("$.inner_product: explicit inner product is not positive definite");
    return ip;
}

Description explicit_form(const Description& d)
{
    if (!d.generator)
        return d;
    Instance inst = build_instance(d);
    const auto& V = *inst.A.space();
    Description out = d;
    out.generator.reset();
    out.basis.clear();
    for (std::size_t i = 0; i < V.dim(); ++i)
        out.basis.push_back({V.label(i), V.degree(i)});
    out.unit = V.label(inst.A.unit());
    for (const auto& e : inst.A.mult_entries())
        out.mult.emplace_back(V.label(e.i), V.label(e.j), V.label(e.k), e.coeff);
    for (const auto& D : inst.A.deltas()) {
        std::vector<std::tuple<std::string, std::string, Scalar>> entries;
        for (std::size_t r = 0; r < D.rows(); ++r)
            for (const auto& [c, v] : D.row(r))
                entries.emplace_back(V.label(c), V.label(r), v);
        out.deltas.push_back(std::move(entries));
    }
    if (!out.trace && inst.trace) {
        TraceSpec ts{inst.trace->n, {}};
        for (std::size_t i = 0; i < V.dim(); ++i)
            if (sgn(inst.trace->functional[i]) != 0)
                ts.functional.emplace_back(V.label(i), inst.trace->functional[i]);
        out.trace = ts;
    }
    if (out.inner_product.kind == "default")
        out.inner_product.kind = "orthonormal";  // star Gram matrix is the identity on the wedge basis
    return out;
}

namespace {

// Fisher-Yates with raw engine output, so the order does not depend on the standard library.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng() % i]);
}

bool gate_passes(const std::string& gate, const Instance& inst)
{
    if (gate == "algebra")
        return validate_algebra(inst.A).passed();
    if (gate == "bv")
        return validate_bv(inst.A).passed();
    if (gate == "retract") {
        Retract R = build_retract(inst.A, make_inner_product(inst, inst.ip_spec));
        return verify_retract(inst.A, R).passed();
    }
    if (gate == "cyclic") {
        if (!inst.trace)
            return false;
        Retract R = build_retract(inst.A, make_inner_product(inst, inst.ip_spec));
        return validate_cyclic(inst.A, *inst.trace, R).passed();
    }
    throw MathError("unknown gate '" + gate + "'");
}

bool acceptable(const Description& cand, const std::string& target)
{
    static const std::vector<std::string> order = {"algebra", "bv", "retract", "cyclic"};
    Instance inst;
    try {
        inst = build_instance(cand);
    } catch (const InputError&) {
        return false;
    }
    for (const auto& gate : order) {
        bool pass;
        try {
            pass = gate_passes(gate, inst);
        } catch (const MathError&) {
            pass = false;
        }
        if (gate == target)
            return !pass;
        if (!pass)
            return false;
    }
    return false;
}

}  // namespace

Description perturb_instance(const Description& d, const std::string& target, std::uint64_t seed)
{
    const Description base = explicit_form(d);
    std::map<std::string, int> degree;
    for (const auto& b : base.basis)
        degree[b.label] = b.degree;

    struct Candidate {
        std::string change;
        std::function<void(Description&)> apply;
    };
    std::vector<Candidate> cands;
    if (target == "algebra") {
        for (std::size_t t = 0; t < base.mult.size(); ++t) {
            const auto [a, b, c, s] = base.mult[t];
            if (a == base.unit || b == base.unit || a > b)
                continue;
            const Scalar partner = sign_of(degree[a] * degree[b]) * s;
            cands.push_back({"a*b for (" + a + ", " + b + ") -> " + c + " doubled, b*a kept graded-commutative",
                             [=](Description& x) {
                                 x.mult.emplace_back(a, b, c, s);
                                 if (a != b)
                                     x.mult.emplace_back(b, a, c, partner);
                             }});
        }
    } else if (target == "bv") {
        const int k = base.deltas.size() > 1 && !base.deltas[1].empty() ? 1 : 0;
        for (std::size_t t = 0; t < base.deltas[k].size(); ++t) {
            const auto [s, tg, c] = base.deltas[k][t];
            cands.push_back({"sign of Delta_" + std::to_string(k) + " entry " + s + " -> " + tg + " flipped",
                             [=](Description& x) { std::get<2>(x.deltas[k][t]) = -c; }});
        }
    } else if (target == "cyclic") {
        if (base.trace)
            for (std::size_t t = 0; t < base.trace->functional.size(); ++t) {
                const auto label = base.trace->functional[t].first;
                cands.push_back({"trace coefficient of " + label + " set to zero",
                                 [=](Description& x) { x.trace->functional[t].second = 0; }});
            }
    } else {
        throw InputError("perturbation target must be algebra, bv or cyclic, not '" + target + "'");
    }
    seeded_shuffle(cands, seed);
    for (const auto& cand : cands) {
        Description x = base;
        cand.apply(x);
        if (!acceptable(x, target))
            continue;
        x.name = d.name + "-broken-" + target + "-s" + std::to_string(seed);
        x.perturbation = {{"source", d.name}, {"target", target}, {"seed", seed}, {"change", cand.change}};
        x.expect = {{"first_failing_gate", target}};
        return x;
    }
    throw MathError("no single-entry perturbation of '" + d.name + "' fails only the " + target + " gate");
}

Retract perturb_retract(const BVAlgebra& A, const Retract& R, std::uint64_t seed)
{
    const auto& V = *A.space();
    std::vector<std::pair<std::size_t, std::size_t>> cands;
    for (std::size_t r = 0; r < V.dim(); ++r)
        for (std::size_t c = 0; c < V.dim(); ++c)
            if (V.degree(r) == V.degree(c) - 1)
                cands.emplace_back(r, c);
    seeded_shuffle(cands, seed);
    for (const auto& [r, c] : cands) {
        Retract P = R;
        P.h.add_to(r, c, Scalar(1));
        if (!verify_retract(A, P).passed())
            return P;
    }
    throw MathError("no single-entry change of h breaks the retract identities");
}

namespace {

Multivector mv(std::initializer_list<std::pair<std::vector<std::size_t>, long>> terms)
{
    Multivector w;
    for (const auto& [word, c] : terms) {
        std::vector<std::size_t> z;
        for (auto i : word)
            z.push_back(i - 1);
        w.terms.emplace_back(z, Scalar(c));
    }
    return w;
}

Description ce(const std::string& name, std::size_t dim, std::vector<Bracket> brackets, Multivector pi = {},
               Multivector eta = {}, const std::string& outcome = "pass")
{
    Description d;
    d.name = name;
    for (auto& b : brackets) {
        b.i -= 1;
        b.j -= 1;
        b.k -= 1;
    }
    d.generator = CEBlock{dim, std::move(brackets), std::move(pi), std::move(eta)};
    d.expect = {{"first_failing_gate", outcome}};
    return d;
}

}  // namespace

std::vector<Description> bundled_corpus()
{
    const Bracket heis{2, 1, 3, Scalar(1)};  // [X2, X1] = X3, so de3 = e1 e2
    std::vector<Description> out;
    out.push_back(ce("torus-2", 2, {}));
    out.push_back(ce("torus-3", 3, {}));
    out.push_back(ce("heisenberg", 3, {heis}));
    out.push_back(ce("heisenberg-pi13", 3, {heis}, mv({{{1, 3}, 1}})));
    out.push_back(ce("heisenberg-pi12", 3, {heis}, mv({{{1, 2}, 1}}), {}, "degeneration"));
    out.push_back(ce("heisenberg-jacobi", 3, {heis}, mv({{{1, 2}, 1}}), mv({{{3}, 1}})));
    out.push_back(ce("heisenberg-r-pi14", 4, {heis}, mv({{{1, 4}, 1}})));
    out.push_back(ce("heisenberg-r-jacobi", 4, {heis}, mv({{{1, 2}, 1}, {{3, 4}, 1}}), mv({{{3}, 1}})));
    out.push_back(ce("filiform-4-jacobi", 4, {{1, 2, 3, Scalar(1)}, {1, 3, 4, Scalar(1)}},
                     mv({{{1, 3}, 1}, {{1, 4}, 1}}), mv({{{3}, 1}})));
    out.push_back(ce("contact-5", 5, {{1, 2, 5, Scalar(1)}, {3, 4, 5, Scalar(1)}}, mv({{{1, 2}, 1}, {{3, 4}, 1}}),
                     mv({{{5}, 1}}), "degeneration"));

    {
        Description c;
        c.name = "contractible";
        c.basis = {{"1", 0}, {"x", 0}, {"y", 1}};
        c.unit = "1";
        c.mult = {{"1", "1", "1", Scalar(1)}, {"1", "x", "x", Scalar(1)}, {"x", "1", "x", Scalar(1)},
                  {"1", "y", "y", Scalar(1)}, {"y", "1", "y", Scalar(1)}};
        c.deltas = {{{"x", "y", Scalar(1)}}};
        c.trace = TraceSpec{0, {{"1", Scalar(1)}}};
        c.expect = {{"first_failing_gate", "pass"}};
        out.push_back(c);
    }
    {
        // d = 0 with Delta_1 = contraction by X1: satisfies the BV relations but is not cyclic for the top trace.
        Description t = explicit_form(ce("torus-2-contraction", 2, {}));
        ExteriorAlgebra ext(2);
        GradedMap iota = contraction(ext, mv({{{1}, 1}}));
        const auto& V = *ext.space();
        std::vector<std::tuple<std::string, std::string, Scalar>> entries;
        for (std::size_t r = 0; r < iota.rows(); ++r)
            for (const auto& [col, v] : iota.row(r))
                entries.emplace_back(V.label(col), V.label(r), v);
        t.deltas.resize(2);
        t.deltas[1] = entries;
        t.expect = {{"first_failing_gate", "cyclic"}};
        out.push_back(t);
    }
    {
        Description r = ce("heisenberg-jacobi-random-metric", 3, {heis}, mv({{{1, 2}, 1}}), mv({{{3}, 1}}),
                           "goodbasis");
        r.inner_product.kind = "random";
        r.inner_product.seed = 7;
        out.push_back(r);
    }
    const Description hj = out[5];
    const Description h3r = out[6];
    const Description t2 = out[0];
    out.push_back(perturb_instance(hj, "bv", 1));
    out.push_back(perturb_instance(hj, "algebra", 2));
    out.push_back(perturb_instance(t2, "cyclic", 3));
    out.push_back(perturb_instance(h3r, "bv", 4));
    return out;
}

}  // namespace bvf
