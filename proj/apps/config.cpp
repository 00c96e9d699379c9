#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "sovxxz/errors.hpp"

namespace sovxxz::app {

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t = {
        // validate
        {"sc_hk", 1e-9}, {"sov_action", 1e-8}, {"yang_baxter", 1e-12}, {"twist_commutator", 1e-12},
        {"rtt", 1e-10}, {"qdet", 1e-10}, {"transfer_commutator", 1e-10}, {"reference_state", 1e-12},
        {"vandermonde", 1e-11}, {"inverse_problem", 1e-8}, {"identity", 1e-9}, {"ext_limit", 1e-6},
        {"interpolation", 1e-9}, {"negation", 1e-9}, {"isospectral", 1e-9}, {"wronskian", 1e-8},
        {"sum_rule", 1e-8}, {"relations_xi", 1e-8}, {"ftilde_tau", 1e-8},
        // spectrum
        {"tq", 1e-7}, {"bethe", 1e-9}, {"discrete", 1e-8}, {"eigenstate", 1e-8},
        // observables
        {"representation", 1e-7}, {"oracle", 1e-7}, {"orthogonality", 1e-8}, {"form_factor", 1e-7},
        {"form_cross", 1e-8}, {"pm_equality", 1e-8}, {"product", 1e-7}, {"last_line", 1e-8},
    };
    return t;
}

double tolerance(const RunConfig& c, const std::string& name) {
    if (auto it = c.tolerances.find(name); it != c.tolerances.end()) return it->second;
    return default_tolerances().at(name);
}

namespace {

cplx parse_complex(const json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("field '" + field + "': expected a number or [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::pair<double, double> parse_range(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("field '" + field + "': expected [lo, hi]");
    const double lo = j[0].get<double>(), hi = j[1].get<double>();
    if (!(lo < hi)) throw ConfigError("field '" + field + "': lo must be below hi");
    return {lo, hi};
}

std::uint64_t parse_seed(const json& j, const std::string& field) {
    if (!j.is_number_unsigned()) throw ConfigError("field '" + field + "': expected a non-negative integer");
    return j.get<std::uint64_t>();
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError(where + ": unknown field '" + it.key() + "'");
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(j,
               {"schema", "N", "eta", "xi", "seed", "kappa", "kappa2", "sites", "operators", "tolerances",
                "representations", "max_pairs_n", "out"},
               "config");
    RunConfig c;
    if (j.contains("schema") && j["schema"] != 1) throw ConfigError("field 'schema': only version 1 is supported");
    if (j.contains("N")) {
        if (!j["N"].is_number_integer()) throw ConfigError("field 'N': expected an integer");
        c.N = j["N"].get<int>();
        if (c.N < 1 || c.N > 8) throw ConfigError("field 'N': must be in [1, 8]");
    }
    if (j.contains("eta")) c.eta = parse_complex(j["eta"], "eta");
    if (j.contains("seed")) c.seed = parse_seed(j["seed"], "seed");
    if (j.contains("xi")) {
        const json& x = j["xi"];
        if (x.is_array()) {
            std::vector<cplx> v;
            for (size_t i = 0; i < x.size(); ++i) v.push_back(parse_complex(x[i], "xi[" + std::to_string(i) + "]"));
            if (static_cast<int>(v.size()) != c.N)
                throw ConfigError("field 'xi': expected " + std::to_string(c.N) + " entries");
            c.xi = v;
        } else if (x.is_object()) {
            check_keys(x, {"seed", "box", "min_separation"}, "xi");
            if (x.contains("seed")) c.seed = parse_seed(x["seed"], "xi.seed");
            if (x.contains("box")) {
                check_keys(x["box"], {"re_range", "im_range"}, "xi.box");
                if (x["box"].contains("re_range"))
                    std::tie(c.re_lo, c.re_hi) = parse_range(x["box"]["re_range"], "xi.box.re_range");
                if (x["box"].contains("im_range"))
                    std::tie(c.im_lo, c.im_hi) = parse_range(x["box"]["im_range"], "xi.box.im_range");
            }
            if (x.contains("min_separation")) {
                if (!x["min_separation"].is_number()) throw ConfigError("field 'xi.min_separation': expected a number");
                c.min_separation = x["min_separation"].get<double>();
            }
        } else {
            throw ConfigError("field 'xi': expected a list of [re, im] or a seeded-box object");
        }
    }
    if (j.contains("kappa")) c.kappa = parse_complex(j["kappa"], "kappa");
    if (j.contains("kappa2")) c.kappa2 = parse_complex(j["kappa2"], "kappa2");
    if (j.contains("sites")) {
        c.sites.clear();
        for (const auto& s : j["sites"]) {
            if (!s.is_number_integer()) throw ConfigError("field 'sites': expected integers");
            const int n = s.get<int>();
            if (n < 1 || n > c.N) throw ConfigError("field 'sites': site " + std::to_string(n) + " out of range");
            c.sites.push_back(n);
        }
    }
    if (j.contains("operators")) {
        c.operators.clear();
        for (const auto& o : j["operators"]) {
            if (!o.is_string() || (o != "z" && o != "+" && o != "-"))
                throw ConfigError("field 'operators': entries must be \"z\", \"+\" or \"-\"");
            c.operators.push_back(o.get<std::string>());
        }
    }
    if (j.contains("representations")) {
        c.representations.clear();
        const auto& all = all_representations();
        for (const auto& r : j["representations"]) {
            if (!r.is_string() || std::find(all.begin(), all.end(), r.get<std::string>()) == all.end())
                throw ConfigError("field 'representations': unknown representation " + r.dump());
            c.representations.push_back(r.get<std::string>());
        }
    }
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object()) throw ConfigError("field 'tolerances': expected an object");
        for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
            if (!default_tolerances().count(it.key()))
                throw ConfigError("field 'tolerances': unknown check '" + it.key() + "'");
            if (!it.value().is_number()) throw ConfigError("field 'tolerances." + it.key() + "': expected a number");
            c.tolerances[it.key()] = it.value().get<double>();
        }
    }
    if (j.contains("max_pairs_n")) {
        if (!j["max_pairs_n"].is_number_integer()) throw ConfigError("field 'max_pairs_n': expected an integer");
        c.max_pairs_n = j["max_pairs_n"].get<int>();
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw ConfigError("field 'out': expected a path string");
        c.out = j["out"].get<std::string>();
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
    return parse_config(j);
}

void apply_tolerance_override(RunConfig& c, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + assignment + "'");
    const std::string name = assignment.substr(0, eq), val = assignment.substr(eq + 1);
    if (!default_tolerances().count(name)) throw ConfigError("--tol: unknown check '" + name + "'");
    std::istringstream is(val);
    double v;
    if (!(is >> v) || !is.eof()) throw ConfigError("--tol: cannot parse value '" + val + "'");
    c.tolerances[name] = v;
}

ModelParams make_params(const RunConfig& c) {
    ModelParams p;
    p.N = c.N;
    p.eta = c.eta;
    p.kappa = c.kappa;
    p.kappa2 = c.kappa2;
    p.delta_min = c.min_separation;
    p.xi = c.xi ? *c.xi
                : generate_xi(c.N, c.eta, c.seed, c.re_lo, c.re_hi, c.im_lo, c.im_hi, c.min_separation);
    p.validate();
    return p;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx z : v) a.push_back(to_json(z));
    return a;
}

const std::vector<std::string>& all_representations() {
    static const std::vector<std::string> r = {"dense",   "direct",        "direct_sum", "izergin",
                                               "slavnov", "slavnov_gamma", "tau"};
    return r;
}

bool representation_enabled(const RunConfig& c, const std::string& name) {
    return c.representations.empty() ||
           std::find(c.representations.begin(), c.representations.end(), name) != c.representations.end();
}

}  // namespace sovxxz::app
