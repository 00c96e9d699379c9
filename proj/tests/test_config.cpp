#include <cstdio>
#include <fstream>

#include "config.hpp"
#include "doctest.h"
#include "reports.hpp"
#include "sovxxz/errors.hpp"

using namespace sovxxz;
using namespace sovxxz::app;

TEST_CASE("config parsing") {
    const RunConfig d = parse_config(json::object());
    CHECK(d.N == 3);
    CHECK(d.eta == cplx(0.6, 0.35));
    CHECK(d.kappa2 == cplx(1.3, 0.2));
    CHECK(d.seed == 42);

    const RunConfig c = parse_config(json::parse(R"({
        "N": 2, "eta": [0.5, 0.3], "kappa": [1.1, 0.0],
        "xi": {"seed": 7, "box": {"re_range": [-0.8, 0.8], "im_range": [-0.2, 0.2]}, "min_separation": 0.2},
        "sites": [1], "operators": ["z"], "representations": ["direct", "tau"],
        "tolerances": {"tq": 1e-6}, "out": "r.json"})"));
    CHECK(c.N == 2);
    CHECK(c.seed == 7);
    CHECK(c.re_hi == 0.8);
    CHECK(c.min_separation == 0.2);
    CHECK(tolerance(c, "tq") == 1e-6);
    CHECK(tolerance(c, "bethe") == 1e-9);
    CHECK(c.out == "r.json");
    CHECK(representation_enabled(c, "tau"));
    CHECK_FALSE(representation_enabled(c, "slavnov"));

    const RunConfig e = parse_config(json::parse(R"({"N": 2, "xi": [[0.1, 0.0], [-0.3, 0.2]]})"));
    REQUIRE(e.xi.has_value());
    CHECK(make_params(e).xi[1] == cplx(-0.3, 0.2));

    CHECK_THROWS_AS(parse_config(json::parse(R"({"bogus": 1})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"eta": "0.6+0.35i"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"N": 12})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"operators": ["x"]})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"tolerances": {"nope": 1}})")), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"kappa": [1]})")), doctest::Contains("kappa"), ConfigError);

    RunConfig o;
    apply_tolerance_override(o, "bethe=1e-15");
    CHECK(tolerance(o, "bethe") == 1e-15);
    CHECK_THROWS_AS(apply_tolerance_override(o, "bethe"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance_override(o, "bethe=abc"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance_override(o, "unknown=1"), ConfigError);
}

TEST_CASE("config file diagnostics") {
    const std::string path = "sovxxz_bad_config.json";
    {
        std::ofstream f(path);
        f << "{\n  \"N\": 3,\n  \"eta\": [0.6 0.35]\n}\n";
    }
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("line 3"), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("does/not/exist.json"), ConfigError);
}

TEST_CASE("duplicate inhomogeneities are rejected") {
    const RunConfig c = parse_config(json::parse(R"({"N": 2, "xi": [[0.1, 0.0], [0.1, 0.0]]})"));
    CHECK_THROWS_AS(make_params(c), ParameterError);
}

TEST_CASE("complex serialization") {
    const json j = to_json(cplx(1.5, -2.0));
    CHECK(j.is_array());
    CHECK(j.size() == 2);
    CHECK(j[0] == 1.5);
    CHECK(j[1] == -2.0);
}

TEST_CASE("validate report") {
    const Report r = run_validate(RunConfig{});
    CHECK(r.pass);
    CHECK(r.body["schema"] == 1);
    for (const auto& [name, chk] : r.body["checks"].items()) {
        CAPTURE(name);
        CHECK(chk["pass"] == true);
        CHECK(chk.contains("residual"));
        CHECK(chk.contains("tolerance"));
    }
    RunConfig strict;
    apply_tolerance_override(strict, "bethe=1e-15");
    apply_tolerance_override(strict, "identity=1e-15");
    const Report s = run_validate(strict);
    CHECK_FALSE(s.pass);
    CHECK(s.body["checks"]["bethe"]["pass"] == false);
    CHECK(s.body["checks"]["qdet"]["pass"] == true);
}

TEST_CASE("spectrum report") {
    RunConfig c;
    c.N = 2;
    const Report r = run_spectrum(c);
    CHECK(r.pass);
    REQUIRE(r.body["records"].size() == 4);
    for (const auto& rec : r.body["records"]) {
        CHECK(rec["certified"] == true);
        CHECK(rec["tau_at_xi"].size() == 2);
        CHECK(rec["tau_at_xi"][0].size() == 2);
    }
    RunConfig c3;
    const Report r3 = run_spectrum(c3);
    CHECK(r3.body["records"].size() == 8);
    for (const auto& rec : r3.body["records"]) CHECK(rec["bethe_residual"].get<double>() < 1e-9);
    CHECK(r3.body.dump() == run_spectrum(c3).body.dump());
}

TEST_CASE("observables report") {
    RunConfig c;
    c.operators = {"z", "-"};
    const Report r = run_observables(c);
    CHECK(r.pass);
    CHECK(r.body["scalar_products"].size() == 64);
    CHECK(r.body["form_factors"].size() == 64 * 3 * 2);
    CHECK(r.body["summary"]["pass"] == true);

    RunConfig sel = c;
    sel.representations = {"direct", "tau"};
    sel.sites = {2};
    const Report rs = run_observables(sel);
    const json& vals = rs.body["scalar_products"][0]["values"];
    CHECK(vals.size() == 2);
    CHECK(vals.contains("direct"));
    CHECK(vals["tau"].contains("izergin"));
    CHECK(rs.body["form_factors"].size() == 64 * 2);

    RunConfig same = c;
    same.kappa2 = same.kappa;
    same.operators = {"z"};
    const Report ro = run_observables(same);
    CHECK(ro.body["orthogonality"]["pairs"].size() == 56);
    int vanishing = 0;
    for (const auto& e : ro.body["scalar_products"]) {
        const bool diag = e["pair"][0] == e["pair"][1];
        CHECK(e["vanishing"] == !diag);
        vanishing += e["vanishing"].get<bool>();
    }
    CHECK(vanishing == 56);

    // The shared sigma+- determinant does not reproduce sigma+.
    RunConfig all;
    const Report ra = run_observables(all);
    CHECK_FALSE(ra.pass);
    CHECK(ra.body["summary"]["form_factors"]["failures"].get<int>() > 0);
    for (const auto& f : ra.body["form_factors"])
        if (f["operator"] != "+") CHECK(f["pass"] == true);
}
