#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sovxxz/qfunction.hpp"

namespace sovxxz::app {

using json = nlohmann::ordered_json;

struct RunConfig {
    int N = 3;
    cplx eta{0.6, 0.35};
    std::optional<std::vector<cplx>> xi;  // explicit inhomogeneities; otherwise seeded
    std::uint64_t seed = 42;
    double re_lo = -1.0, re_hi = 1.0, im_lo = -0.4, im_hi = 0.4, min_separation = 0.1;
    cplx kappa = 1.0;
    cplx kappa2{1.3, 0.2};
    std::vector<int> sites;                            // empty = all sites
    std::vector<std::string> operators{"z", "+", "-"};
    std::vector<std::string> representations;          // empty = all
    std::map<std::string, double> tolerances;          // overrides of the defaults
    int max_pairs_n = 5;                               // full pairwise sweep only up to this N
    std::string out;                                   // report path; empty = stdout
};

// Default tolerance per check name.
const std::map<std::string, double>& default_tolerances();
double tolerance(const RunConfig& c, const std::string& name);

RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);
// Applies "name=value"; throws ConfigError on malformed input or unknown names.
void apply_tolerance_override(RunConfig& c, const std::string& assignment);

ModelParams make_params(const RunConfig& c);

// Complex numbers are serialized as [re, im].
json to_json(cplx z);
json to_json(const std::vector<cplx>& v);

// Representation names accepted by the observables selector.
const std::vector<std::string>& all_representations();
bool representation_enabled(const RunConfig& c, const std::string& name);

}  // namespace sovxxz::app
