#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "config.hpp"
#include "reports.hpp"
#include "sovxxz/errors.hpp"

using namespace sovxxz;
using namespace sovxxz::app;

namespace {

struct Options {
    std::string config, out;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> tols;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "JSON configuration file");
    cmd->add_option("--out", o.out, "report path (overrides the config; stdout when neither is set)");
    cmd->add_option("--seed", o.seed, "overrides the configuration seed");
    cmd->add_option("--tol", o.tols, "tolerance override name=value (repeatable)");
}

int run(const std::string& name, const Options& o) {
    RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (o.seed) c.seed = *o.seed;
    for (const auto& t : o.tols) apply_tolerance_override(c, t);
    Report r = name == "validate" ? run_validate(c) : name == "spectrum" ? run_spectrum(c) : run_observables(c);
    const std::string text = r.body.dump(2) + "\n";
    const std::string out = o.out.empty() ? c.out : o.out;
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + out);
        f << text;
    }
    std::cerr << name << ": " << (r.pass ? "all checks passed" : "some checks failed") << "\n";
    return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Antiperiodic XXZ separation-of-variables toolkit"};
    app.require_subcommand(1);
    Options o;
    for (const char* name : {"validate", "spectrum", "observables"}) add_common(app.add_subcommand(name), o);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return run(name, o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const SizeError& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return 2;
    } catch (const DegeneracyError& e) {
        std::cerr << "degeneracy: " << e.what() << " (re-run with a different --seed)\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
