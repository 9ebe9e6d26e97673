// Command-line front end: exit 0 = every check passed, 1 = a mathematical check failed, 2 = input error.
#include "bvfrob/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

using namespace bvf;

namespace {

struct Common {
    std::string input;
    int tau_order = 4;
    int hbar_order = 6;
    int kmax = 6;
    std::string format = "json";
    std::uint64_t seed = 0;
    CLI::Option* tau_opt = nullptr;
    CLI::Option* hbar_opt = nullptr;
    CLI::Option* kmax_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c, bool needs_input)
{
    auto* in = sub->add_option("--input", c.input, "instance file (JSON)");
    if (needs_input)
        in->required();
    c.tau_opt = sub->add_option("--tau-order", c.tau_order, "tau truncation order N (default 4)");
    c.hbar_opt = sub->add_option("--hbar-order", c.hbar_order, "hbar truncation order M (default 6)");
    c.kmax_opt = sub->add_option("--kmax", c.kmax, "highest transferred operator checked (default 6)");
    sub->add_option("--format", c.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
    c.seed_opt = sub->add_option("--seed", c.seed, "use the seeded random inner product");
}

PipelineOptions options_of(const Common& c, const std::string& stop)
{
    PipelineOptions o;
    if (*c.tau_opt)
        o.tau_order = c.tau_order;
    if (*c.hbar_opt)
        o.hbar_order = c.hbar_order;
    if (*c.kmax_opt)
        o.kmax = c.kmax;
    if (*c.seed_opt)
        o.seed = c.seed;
    o.stop_after = stop;
    return o;
}

std::string render(const PipelineResult& r, const std::string& command, const std::string& format)
{
    if (format == "markdown")
        return report_markdown(r, command);
    return report_json(r, command).dump(2) + "\n";
}

int run_single(const std::string& command, const std::string& stop, const Common& c)
{
    Description d = load_description(c.input);
    PipelineResult r = run_pipeline(d, options_of(c, stop));
    std::cout << render(r, command, c.format);
    return r.passed() ? 0 : 1;
}

int run_corpus(const Common& c, const std::string& export_dir)
{
    auto corpus = bundled_corpus();
    if (!export_dir.empty()) {
        std::filesystem::create_directories(export_dir);
        for (const auto& d : corpus)
            save_description(d, (std::filesystem::path(export_dir) / (d.name + ".json")).string());
    }
    Json summary = Json::array();
    bool all_match = true;
    std::ostringstream md;
    md << "| instance | expected | outcome | match |\n|---|---|---|---|\n";
    const PipelineOptions opt = options_of(c, "frobenius");
    std::vector<std::future<PipelineResult>> runs;
    for (const auto& d : corpus)
        runs.push_back(std::async(std::launch::async, [&d, &opt] { return run_pipeline(d, opt); }));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Description& d = corpus[i];
        PipelineResult r = runs[i].get();
        const std::string expected = d.expect.value("first_failing_gate", "pass");
        const std::string outcome = r.first_failure();
        const bool match = expected == outcome;
        all_match = all_match && match;
        summary.push_back({{"instance", d.name}, {"expected", expected}, {"outcome", outcome}, {"match", match}});
        md << "| " << d.name << " | " << expected << " | " << outcome << " | " << (match ? "yes" : "NO") << " |\n";
    }
    if (c.format == "markdown")
        std::cout << "# corpus\n\n" << md.str();
    else
        std::cout << Json{{"format", "bvfrob-corpus"}, {"version", 1}, {"instances", summary},
                          {"all_match", all_match}}
                         .dump(2)
                  << "\n";
    return all_match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact BV-algebra degeneration, QME and Frobenius-manifold checks"};
    app.require_subcommand(1);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "bv"},           {"cohomology", "retract"},   {"retract", "retract"},
        {"degeneration", "degeneration"}, {"cyclic", "cyclic"},   {"goodbasis", "goodbasis"},
        {"qme", "qme"},               {"frobenius", "frobenius"}, {"pipeline", "frobenius"}};
    const std::map<std::string, std::string> help = {
        {"validate", "algebra axioms and the BV relations"},
        {"cohomology", "harmonic representatives and Betti numbers"},
        {"retract", "homotopy retract and its identities"},
        {"degeneration", "vanishing of the transferred operators"},
        {"cyclic", "trace, cyclicity and the pairing on cohomology"},
        {"goodbasis", "splitting, perturbed retract and good basis"},
        {"qme", "order-by-order quantum master equation"},
        {"frobenius", "flat coordinates and Frobenius axioms"},
        {"pipeline", "every stage in order, stopping at the first failure"}};

    std::map<std::string, Common> common;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, stop] : commands) {
        subs[name] = app.add_subcommand(name, help.at(name));
        add_common(subs[name], common[name], true);
    }
    auto* corpus = app.add_subcommand("corpus", "run the bundled corpus and compare with the expected outcomes");
    add_common(corpus, common["corpus"], false);
    std::string export_dir;
    corpus->add_option("--export", export_dir, "write the corpus instances as JSON files into DIR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*corpus)
            return run_corpus(common["corpus"], export_dir);
        for (const auto& [name, stop] : commands)
            if (*subs[name])
                return run_single(name, stop, common[name]);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
