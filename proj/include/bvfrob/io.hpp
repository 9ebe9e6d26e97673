#pragma once

#include "bvfrob/cyclic.hpp"
#include "bvfrob/models.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace bvf {

using Json = nlohmann::json;

inline constexpr const char* kInstanceFormat = "bvfrob-instance";
inline constexpr int kInstanceVersion = 1;

struct CEBlock {
    std::size_t dim = 0;
    std::vector<Bracket> brackets;  // 0-based; files use generator numbers X1..Xn
    Multivector pi;
    Multivector eta;
};

struct InnerProductSpec {
    std::string kind = "default";  // default | orthonormal | star | random | explicit
    std::uint64_t seed = 0;
    std::vector<std::tuple<std::string, std::string, Scalar>> entries;  // explicit, upper triangle
};

struct TraceSpec {
    int degree = 0;
    std::vector<std::pair<std::string, Scalar>> functional;
};

struct TruncationSpec {
    std::optional<int> tau_order;
    std::optional<int> hbar_order;
    std::optional<int> kmax;
};

/// Parsed instance file. Either `generator` is set, or basis/unit/mult/deltas describe A explicitly.
struct Description {
    std::string name;
    std::optional<CEBlock> generator;
    std::vector<BasisElement> basis;
    std::string unit;
    std::vector<std::tuple<std::string, std::string, std::string, Scalar>> mult;  // a*b += c*target
    std::vector<std::vector<std::tuple<std::string, std::string, Scalar>>> deltas;  // [k] -> (source, target, c)
    std::optional<TraceSpec> trace;
    InnerProductSpec inner_product;
    TruncationSpec truncation;
    Json expect = Json::object();        // corpus annotations, kept verbatim
    Json perturbation = Json::object();  // provenance of seeded negatives
};

/// Throws InputError naming the offending location.
Description parse_description(const Json& j);
Description load_description(const std::string& path);
/// Canonical JSON (sorted keys, normalized rationals, sorted tables).
Json to_json(const Description& d);
Json canonicalize(const Json& j);
void save_description(const Description& d, const std::string& path);

/// A loaded instance with everything needed by the pipeline.
struct Instance {
    std::string name;
    BVAlgebra A;
    std::optional<ExteriorAlgebra> ext;
    std::optional<Trace> trace;
    InnerProductSpec ip_spec;
};

Instance build_instance(const Description& d);

/// Inner product for the given spec; "default" means star for generated models, orthonormal otherwise.
InnerProduct make_inner_product(const Instance& inst, const InnerProductSpec& spec);

/// Same algebra written out as basis, multiplication table, deltas and trace.
Description explicit_form(const Description& d);

/// Which validator a seeded negative must fail: "algebra" (one structure constant pair changed),
/// "bv" (one sign of a Delta entry flipped), "cyclic" (top trace coefficient zeroed).
/// Deterministic in (d, target, seed); earlier gates keep passing. Throws MathError if no
/// candidate entry produces the intended failure.
Description perturb_instance(const Description& d, const std::string& target, std::uint64_t seed);

/// Changes one entry of h so that verify_retract fails.
Retract perturb_retract(const BVAlgebra& A, const Retract& R, std::uint64_t seed);

/// Bundled corpus: torus, Heisenberg, Heisenberg x R, filiform n4, contact h5, contractible,
/// explicit and seeded negatives. Order is fixed.
std::vector<Description> bundled_corpus();

}  // namespace bvf
