#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "reports.hpp"
#include "sovxxz/spectrum.hpp"

using namespace sovxxz;
using namespace sovxxz::app;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

struct Outcome {
    std::set<int> failed;
    void line(int n, bool ok, const std::string& text) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << n << " " << text << std::endl;
        if (!ok) failed.insert(n);
    }
};

double check_residual(const json& rep, const std::string& name) {
    const json& r = rep.at("checks").at(name).at("residual");
    return r.is_null() ? 1e300 : r.get<double>();
}

double tau_gap(const std::vector<cplx>& a, const std::vector<cplx>& b, double sign) {
    double num = 0, den = 0;
    for (size_t j = 0; j < a.size(); ++j) {
        num = std::max(num, std::abs(a[j] - sign * b[j]));
        den = std::max({den, std::abs(a[j]), std::abs(b[j])});
    }
    return num / den;
}

// Max over a of min over b of the tau distance; also requires a one-to-one match.
double multiset_gap(const std::vector<EigenRecord>& A, const std::vector<EigenRecord>& B, double sign) {
    double worst = 0;
    std::vector<bool> used(B.size(), false);
    for (const auto& a : A) {
        double best = 1e300;
        size_t arg = 0;
        for (size_t b = 0; b < B.size(); ++b) {
            if (used[b]) continue;
            const double g = tau_gap(a.tau_at_xi, B[b].tau_at_xi, sign);
            if (g < best) best = g, arg = b;
        }
        if (arg < used.size()) used[arg] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> known;
    app.add_option("--known-failure", known, "criteria whose failure does not change the exit status");
    CLI11_PARSE(app, argc, argv);

    Outcome out;
    const RunConfig base;

    {  // 1
        const auto t0 = Clock::now();
        const ModelParams p = make_params(base);
        const SovBasis basis(p);
        double w = 0;
        for (SovIndex h = 0; h < basis.size(); ++h) {
            const cplx vh = sov_measure_vdm(p, h);
            for (SovIndex k = 0; k < basis.size(); ++k) {
                const cplx v = pair(basis.bra(h), basis.ket(k));
                w = std::max(w, h == k ? rel_err(v, 1.0 / vh) : std::abs(v * vh));
            }
        }
        const double dt = seconds_since(t0);
        out.line(1, w < 1e-9 && dt < 5.0,
                 "SoV measure <h|k> at N=3, 64 pairs: max rel err " + fmt(w) + " (< 1e-9), " + fmt(dt) + " s (< 5)");
    }

    {  // 2
        bool ok = true;
        std::string text = "spectrum certification:";
        double runtime4 = 0;
        for (int N : {2, 3, 4}) {
            RunConfig c = base;
            c.N = N;
            const ModelParams p = make_params(c);
            const auto t0 = Clock::now();
            const auto recs = solve_spectrum(p, p.kappa, c.seed);
            if (N == 4) runtime4 = seconds_since(t0);
            const auto recs2 = solve_spectrum(p, p.kappa2, c.seed);
            int cert = 0;
            for (const auto& r : recs) cert += r.certified;
            for (const auto& r : recs2) cert += r.certified;
            const double neg = multiset_gap(recs, recs, -1.0);
            const double iso = multiset_gap(recs, recs2, 1.0);
            const bool n_ok = cert == 2 * (1 << N) && static_cast<int>(recs.size()) == (1 << N) &&
                              static_cast<int>(recs2.size()) == (1 << N) && neg < 1e-9 && iso < 1e-9;
            ok = ok && n_ok;
            text += " N=" + std::to_string(N) + " certified " + std::to_string(cert) + "/" +
                    std::to_string(2 * (1 << N)) + " negation " + fmt(neg) + " isospectral " + fmt(iso) + ";";
        }
        ok = ok && runtime4 < 60.0;
        out.line(2, ok, text + " N=4 runtime " + fmt(runtime4) + " s (< 60)");
    }

    RunConfig oc = base;
    const auto t_obs = Clock::now();
    const Report obs = run_observables(oc);
    const double obs_time = seconds_since(t_obs);
    const json& sum = obs.body.at("summary");

    {  // 3
        double worst = 0;
        size_t pairs = 0;
        for (const auto& e : obs.body.at("scalar_products")) {
            worst = std::max(worst, e.at("max_deviation").get<double>());
            ++pairs;
        }
        out.line(3, worst < 1e-7 && pairs == 64,
                 "scalar-product representations vs each other and dense, " + std::to_string(pairs) +
                     " pairs: max deviation " + fmt(worst) + " (< 1e-7)");
    }
    {  // 4
        const double r = obs.body.at("orthogonality").at("max_ratio").get<double>();
        out.line(4, r < 1e-8, "orthogonality |sp|/norms over distinct pairs: max " + fmt(r) + " (< 1e-8)");
    }
    {  // 5
        const json& pi = obs.body.at("product_identity");
        const double d = pi.at("max_deviation").get<double>(), l = pi.at("last_line_max_relative").get<double>();
        out.line(5, d < 1e-7 && l < 1e-8,
                 "product identity, 5 seeded (alpha,beta) per pair: max deviation " + fmt(d) +
                     " (< 1e-7); last line " + fmt(l) + " of entry scale (< 1e-8)");
    }
    {  // 6
        std::map<std::string, double> by_op;
        std::map<std::string, double> cross;
        for (const auto& e : obs.body.at("form_factors")) {
            const std::string op = e.at("operator");
            by_op[op] = std::max(by_op[op], e.at("deviation").get<double>());
            cross[op] = std::max(cross[op], e.at("cross_deviation").get<double>());
        }
        const double pm = sum.at("sigma_plus_equals_minus").at("max_deviation").get<double>();
        bool ok = pm < 1e-8 && obs_time < 120.0;
        std::string text = "form factors vs brute force, all pairs and sites:";
        for (const auto& [op, d] : by_op) {
            ok = ok && d < 1e-7 && cross[op] < 1e-8;
            text += " sigma" + op + " " + fmt(d) + (d < 1e-7 ? " ok;" : " FAILS;");
        }
        text += " sigma+ = sigma- " + fmt(pm) + (pm < 1e-8 ? " ok;" : " FAILS;");
        out.line(6, ok, text + " sweep " + fmt(obs_time) + " s (< 120)");
    }

    const Report val = run_validate(base);
    {  // 7
        const double r = check_residual(val.body, "inverse_problem");
        out.line(7, r < 1e-8, "inverse problem, all sites, all (i,j), three dressings: max " + fmt(r) + " (< 1e-8)");
    }
    {  // 8
        double w = 0;
        for (const char* k : {"identity_af_if", "identity_af_if_zero", "identity_xm_beta", "identity_izergin_slavnov",
                              "identity_ize2", "identity_ize3"})
            w = std::max(w, check_residual(val.body, k));
        const double ext = check_residual(val.body, "ext_limit");
        out.line(8, w < 1e-9 && ext < 1e-6,
                 "identity bench: max " + fmt(w) + " (< 1e-9); extension limit " + fmt(ext) + " (< 1e-6)");
    }
    {  // 9
        const double wr = check_residual(val.body, "wronskian"), sr = check_residual(val.body, "sum_rule");
        out.line(9, wr < 1e-8 && sr < 1e-8,
                 "Q structure: Wronskian " + fmt(wr) + " (< 1e-8), sum-rule defect " + fmt(sr) + " (< 1e-8)");
    }
    {  // 10
        const std::string s1 = run_spectrum(base).body.dump(2), s2 = run_spectrum(base).body.dump(2);
        const std::string o2 = run_observables(oc).body.dump(2);
        const std::string v2 = run_validate(base).body.dump(2);
        const bool ok = s1 == s2 && o2 == obs.body.dump(2) && v2 == val.body.dump(2);
        out.line(10, ok, "determinism: spectrum, observables and validate reports byte-identical across two runs");
    }

    int unexpected = 0;
    for (int n : out.failed)
        if (std::find(known.begin(), known.end(), n) == known.end()) ++unexpected;
    std::cout << "summary: " << 10 - out.failed.size() << "/10 criteria pass";
    if (!out.failed.empty()) {
        std::cout << "; failing:";
        for (int n : out.failed) std::cout << " " << n;
    }
    std::cout << std::endl;
    return unexpected == 0 ? 0 : 1;
}
