#pragma once

#include "bvfrob/frobenius.hpp"
#include "bvfrob/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bvf {

/// Stage order; a failing stage stops the run.
const std::vector<std::string>& pipeline_stages();

struct Parameter {
    int value = 0;
    std::string source = "default";  // default | file | flag
};

struct PipelineOptions {
    std::optional<int> tau_order;   // command-line values; unset falls back to the file, then defaults
    std::optional<int> hbar_order;
    std::optional<int> kmax;
    std::optional<std::uint64_t> seed;  // replaces the inner product by the seeded random one
    std::string stop_after = "frobenius";
};

struct StageResult {
    std::string stage;
    std::string status;  // pass | fail | skipped
    Report report;
    Json data = Json::object();
    std::string error;  // message of a mathematical exception that ended the stage
};

struct PipelineResult {
    std::string instance;
    Parameter tau_order{4};
    Parameter hbar_order{6};
    Parameter kmax{6};
    std::string inner_product;
    std::vector<StageResult> stages;

    bool passed() const;
    /// First failing stage, or "pass".
    std::string first_failure() const;
    const StageResult* stage(const std::string& name) const;
};

/// Throws InputError for unusable input; mathematical failures end up in the result.
PipelineResult run_pipeline(const Description& d, const PipelineOptions& opt);

Json report_json(const PipelineResult& r, const std::string& command);
std::string report_markdown(const PipelineResult& r, const std::string& command);

/// "c*t[a]*t[b] + ..." with hbar powers written out; terms in monomial order.
std::string series_str(const ScalarTau& s);
std::string series_str(const VecTau& s, const GradedSpace& V);
std::string laurent_str(const LaurentScalar& x);
std::string laurent_str(const LaurentVec& x, const GradedSpace& V);

}  // namespace bvf
