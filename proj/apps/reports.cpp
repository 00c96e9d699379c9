#include "reports.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sovxxz/errors.hpp"
#include "sovxxz/observables.hpp"

namespace sovxxz::app {

namespace {

struct Checks {
    json obj = json::object();
    bool pass = true;
    void add(const std::string& name, double residual, double tol) {
        const bool ok = residual < tol;  // NaN fails
        obj[name] = {{"residual", std::isfinite(residual) ? json(residual) : json(nullptr)},
                     {"tolerance", tol},
                     {"pass", ok}};
        pass = pass && ok;
    }
};

json params_json(const RunConfig& c, const ModelParams& p) {
    return {{"N", p.N},         {"eta", to_json(p.eta)},       {"xi", to_json(p.xi)},
            {"seed", c.seed},   {"kappa", to_json(p.kappa)},   {"kappa2", to_json(p.kappa2)}};
}

json header(const std::string& cmd, const RunConfig& c, const ModelParams& p) {
    json j = json::object();
    j["schema"] = 1;
    j["command"] = cmd;
    j["params"] = params_json(c, p);
    return j;
}

SpectrumTolerances spectrum_tolerances(const RunConfig& c) {
    return {tolerance(c, "tq"), tolerance(c, "bethe"), tolerance(c, "discrete"), tolerance(c, "eigenstate")};
}

// Distance between two tau vectors relative to the larger of them.
double tau_distance(const std::vector<cplx>& a, const std::vector<cplx>& b, double sign) {
    double num = 0, den = 0;
    for (size_t j = 0; j < a.size(); ++j) {
        num = std::max(num, std::abs(a[j] - sign * b[j]));
        den = std::max({den, std::abs(a[j]), std::abs(b[j])});
    }
    return num / std::max(den, 1e-300);
}

double nearest_tau(const std::vector<cplx>& a, const std::vector<std::vector<cplx>>& set, double sign) {
    double best = 1e300;
    for (const auto& b : set) best = std::min(best, tau_distance(a, b, sign));
    return best;
}

std::vector<std::pair<int, int>> pair_list(const RunConfig& c, int count) {
    std::vector<std::pair<int, int>> out;
    if (c.N <= c.max_pairs_n) {
        for (int a = 0; a < count; ++a)
            for (int b = 0; b < count; ++b) out.emplace_back(a, b);
    } else {
        for (int a = 0; a < count; ++a) {
            out.emplace_back(a, a);
            out.emplace_back(a, (a + 1) % count);
        }
    }
    return out;
}

std::vector<int> site_list(const RunConfig& c) {
    if (!c.sites.empty()) return c.sites;
    std::vector<int> s;
    for (int n = 1; n <= c.N; ++n) s.push_back(n);
    return s;
}

// |x - ref| relative to |ref|, or to the norm product when ref itself vanishes.
double deviation(cplx x, cplx ref, double norm_product, bool& vanishing) {
    vanishing = std::abs(ref) < 1e-6 * norm_product;
    return std::abs(x - ref) / (vanishing ? norm_product : std::abs(ref));
}

}  // namespace

Report run_validate(const RunConfig& c) {
    const ModelParams p = make_params(c);
    json rep = header("validate", c, p);
    Checks ch;
    const int N = p.N;
    const cplx l1{0.31, 0.12}, l2{-0.27, 0.4};

    ch.add("yang_baxter", yang_baxter_residual(l1, l2, p.eta), tolerance(c, "yang_baxter"));
    ch.add("twist_commutator",
           std::max(twist_commutator(l1, p.eta, p.kappa), twist_commutator(l1, p.eta, p.kappa2)),
           tolerance(c, "twist_commutator"));
    ch.add("rtt", rtt_residual(p, l1, l2), tolerance(c, "rtt"));
    ch.add("qdet", std::max(qdet_residual(p, l1), qdet_residual(p, l2)), tolerance(c, "qdet"));
    ch.add("transfer_commutator", transfer_commutator(p, l1, l2), tolerance(c, "transfer_commutator"));
    ch.add("reference_state", std::max(reference_state_residual(p, l1), reference_state_residual(p, l2)),
           tolerance(c, "reference_state"));
    {
        CMatrix m(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 1; j <= N; ++j) m(i, j - 1) = std::exp(double(2 * j - N - 1) * p.xi[i]) / std::pow(2.0, j - 1);
        ch.add("vandermonde", rel_err(det_lu(m), vandermonde(p.xi)), tolerance(c, "vandermonde"));
    }

    const SovBasis basis(p);
    {
        double w = 0;
        for (SovIndex h = 0; h < basis.size(); ++h) {
            const cplx vh = sov_measure_vdm(p, h);
            for (SovIndex k = 0; k < basis.size(); ++k) {
                const cplx v = pair(basis.bra(h), basis.ket(k));
                w = std::max(w, h == k ? rel_err(v, 1.0 / vh) : std::abs(v * vh));
            }
        }
        ch.add("sc_hk", w, tolerance(c, "sc_hk"));
    }
    ch.add("sov_action", std::max(sov_action_residuals(basis, l1).max(), sov_action_residuals(basis, l2).max()),
           tolerance(c, "sov_action"));
    {
        double w = 0;
        for (int n = 1; n <= N; ++n)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j)
                    for (auto f : {DressingForm::Direct, DressingForm::Inverse, DressingForm::InverseShifted})
                        w = std::max(w, dress_local_operator(p, n, i, j, f, 1e300).residual);
        ch.add("inverse_problem", w, tolerance(c, "inverse_problem"));
    }

    const auto oracle = spectrum_oracle(p, p.kappa);
    const auto oracle2 = spectrum_oracle(p, p.kappa2);
    {
        double interp = 0, neg = 0, iso = 0;
        std::vector<std::vector<cplx>> t1, t2;
        for (const auto& o : oracle) t1.push_back(o.tau.at_xi());
        for (const auto& o : oracle2) t2.push_back(o.tau.at_xi());
        for (size_t a = 0; a < oracle.size(); ++a) {
            interp = std::max(interp, oracle[a].interp_check);
            neg = std::max(neg, nearest_tau(t1[a], t1, -1.0));
            iso = std::max(iso, nearest_tau(t1[a], t2, 1.0));
        }
        ch.add("interpolation", interp, tolerance(c, "interpolation"));
        ch.add("negation", neg, tolerance(c, "negation"));
        ch.add("isospectral", iso, tolerance(c, "isospectral"));
    }

    const auto recs = solve_spectrum(p, p.kappa, c.seed, spectrum_tolerances(c));
    {
        double tq = 0, be = 0, di = 0, es = 0, wr = 0, sr = 0, rx = 0, ft = 0;
        for (const auto& r : recs) {
            tq = std::max(tq, r.tq_residual);
            be = std::max(be, r.bethe_residual);
            di = std::max(di, r.discrete_residual);
            es = std::max(es, r.eigenstate_residual);
            wr = std::max(wr, r.wronskian_residual);
            sr = std::max(sr, r.sum_rule_defect);
            for (cplx x : p.xi)
                rx = std::max(rx, rel_err(r.Q(x - p.eta) / r.Q(x), -r.Qhat(x - p.eta) / r.Qhat(x)));
        }
        for (const auto& a : recs)
            for (const auto& b : recs)
                for (cplx x : p.xi) ft = std::max(ft, rel_err(f_tilde(a.Q, b.Q, p, x), -a.tau(x) / b.tau(x)));
        ch.add("tq", tq, tolerance(c, "tq"));
        ch.add("bethe", be, tolerance(c, "bethe"));
        ch.add("discrete", di, tolerance(c, "discrete"));
        ch.add("eigenstate", es, tolerance(c, "eigenstate"));
        ch.add("wronskian", wr, tolerance(c, "wronskian"));
        ch.add("sum_rule", sr, tolerance(c, "sum_rule"));
        ch.add("relations_xi", rx, tolerance(c, "relations_xi"));
        ch.add("ftilde_tau", ft, tolerance(c, "ftilde_tau"));
    }
    {
        const IdentityBench b = identity_bench(p, recs, c.seed);
        const double t = tolerance(c, "identity");
        ch.add("identity_af_if", b.af_if, t);
        ch.add("identity_af_if_zero", b.af_if_zero, t);
        ch.add("identity_xm_beta", b.xm_beta, t);
        ch.add("identity_izergin_slavnov", b.izergin_slavnov, t);
        ch.add("identity_ize2", b.ize2, t);
        ch.add("identity_ize3", b.ize3, t);
        ch.add("ext_limit", b.ext_limit, tolerance(c, "ext_limit"));
    }
    rep["checks"] = ch.obj;
    rep["pass"] = ch.pass;
    return {rep, ch.pass};
}

Report run_spectrum(const RunConfig& c) {
    const ModelParams p = make_params(c);
    json rep = header("spectrum", c, p);
    const auto recs = solve_spectrum(p, p.kappa, c.seed, spectrum_tolerances(c));
    json arr = json::array();
    bool pass = static_cast<int>(recs.size()) == (1 << p.N);
    for (const auto& r : recs) {
        arr.push_back({{"tau_at_xi", to_json(r.tau_at_xi)},
                       {"q_roots", to_json(r.Q.roots())},
                       {"qhat_roots", to_json(r.Qhat.roots())},
                       {"eps", r.eps},
                       {"tq_residual", r.tq_residual},
                       {"bethe_residual", r.bethe_residual},
                       {"discrete_residual", r.discrete_residual},
                       {"eigenstate_residual", r.eigenstate_residual},
                       {"wronskian_residual", r.wronskian_residual},
                       {"wronskian_sign", r.wronskian_sign},
                       {"sum_rule_defect", r.sum_rule_defect},
                       {"sum_rule_k", r.sum_rule_k},
                       {"certified", r.certified}});
        pass = pass && r.certified;
    }
    rep["records"] = arr;
    rep["pass"] = pass;
    return {rep, pass};
}

Report run_observables(const RunConfig& c) {
    const ModelParams p = make_params(c);
    json rep = header("observables", c, p);
    const int N = p.N;
    const auto recs = solve_spectrum(p, p.kappa, c.seed, spectrum_tolerances(c));
    for (const auto& r : recs)
        if (!r.certified) throw CertificationError("observables: spectrum has uncertified records");
    const SovBasis basis(p);
    const cplx k1 = p.kappa, k2 = p.kappa2, alpha = k2 / k1;
    const auto pairs = pair_list(c, static_cast<int>(recs.size()));
    rep["sweep"] = N <= c.max_pairs_n ? "full" : "partial";

    // Scalar products <P,kappa,+|Q,kappa2,+>.
    const double t_rep = tolerance(c, "representation"), t_or = tolerance(c, "oracle");
    json sps = json::array();
    double sp_worst = 0;
    bool sp_pass = true;
    for (auto [a, b] : pairs) {
        const EigenRecord &ra = recs[a], &rb = recs[b];
        const DensePair st = dense_pair(basis, ra.Q, k1, 1, rb.Q, k2, 1);
        const double np = st.bra.norm() * st.ket.norm();
        json vals = json::object();
        std::vector<std::pair<std::string, cplx>> flat;
        auto put = [&](const std::string& name, cplx v) {
            vals[name] = to_json(v);
            flat.emplace_back(name, v);
        };
        if (representation_enabled(c, "dense")) put("dense", pair(st.bra, st.ket));
        if (representation_enabled(c, "direct")) put("direct", sp_direct(p, ra.Q, rb.Q, alpha));
        if (representation_enabled(c, "direct_sum")) put("direct_sum", sp_direct_sum(p, ra.Q, rb.Q, alpha));
        if (representation_enabled(c, "izergin")) put("izergin", sp_izergin(p, ra.Q, rb.Q, alpha));
        if (representation_enabled(c, "slavnov")) put("slavnov", sp_slavnov(p, ra.Q, rb.Q, alpha));
        if (representation_enabled(c, "slavnov_gamma"))
            put("slavnov_gamma", sp_slavnov(p, ra.Q, rb.Q, alpha, cplx(0.4, 0.2)));
        if (representation_enabled(c, "tau")) {
            const TauForms t = sp_tau(p, ra, rb, k1, k2);
            vals["tau"] = {{"izergin", to_json(t.izergin)}, {"slavnov", to_json(t.slavnov)}};
            flat.emplace_back("tau", t.izergin);
            flat.emplace_back("tau", t.slavnov);
        }
        double dev = 0;
        bool vanishing = false;
        for (size_t i = 0; i < flat.size(); ++i)
            for (size_t j = i + 1; j < flat.size(); ++j) {
                bool v = false;
                dev = std::max(dev, deviation(flat[i].second, flat[j].second, np, v));
                vanishing = vanishing || v;
            }
        const double tol = representation_enabled(c, "dense") ? std::min(t_rep, t_or) : t_rep;
        const bool ok = dev < tol;
        sp_worst = std::max(sp_worst, dev);
        sp_pass = sp_pass && ok;
        sps.push_back({{"pair", {a, b}}, {"alpha", to_json(alpha)}, {"values", vals},
                       {"max_deviation", dev}, {"vanishing", vanishing}, {"pass", ok}});
    }
    rep["scalar_products"] = sps;

    // Orthogonality at equal twists.
    json orth = json::array();
    double orth_worst = 0;
    for (auto [a, b] : pairs) {
        if (a == b) continue;
        const DensePair st = dense_pair(basis, recs[a].Q, k1, 1, recs[b].Q, k1, 1);
        const double v = std::abs(sp_direct(p, recs[a].Q, recs[b].Q, 1.0)) / (st.bra.norm() * st.ket.norm());
        orth_worst = std::max(orth_worst, v);
        orth.push_back({{"pair", {a, b}}, {"ratio_to_norms", v}});
    }
    const bool orth_pass = orth_worst < tolerance(c, "orthogonality");
    rep["orthogonality"] = {{"pairs", orth}, {"max_ratio", orth_worst}, {"pass", orth_pass}};

    // Product identity with five seeded (alpha, beta) per pair, and the last-line cancellation.
    double prod_worst = 0, last_worst = 0;
    int excluded = 0;
    cplx printed_ratio = 0.0;
    {
        std::mt19937_64 rng(c.seed);
        std::normal_distribution<double> g;
        for (auto [a, b] : pairs) {
            for (int t = 0; t < 5; ++t) {
                const double ar = g(rng), ai = g(rng), br = g(rng), bi = g(rng);
                const ProductCheck pc = sp_product_check(p, recs[a].Q, recs[b].Q, {ar, ai}, {br, bi});
                prod_worst = std::max(prod_worst, pc.deviation);
                printed_ratio = pc.ratio_to_printed;
            }
            const LastLineCheck ll = product_last_line(p, recs[a].Q, recs[b].Q, {0.7, 0.2});
            last_worst = std::max(last_worst, ll.max_entry / ll.scale);
            excluded += ll.excluded;
        }
    }
    const bool prod_pass = prod_worst < tolerance(c, "product") && last_worst < tolerance(c, "last_line");
    rep["product_identity"] = {{"max_deviation", prod_worst},
                               {"ratio_to_printed_prefactor", to_json(printed_ratio)},
                               {"last_line_max_relative", last_worst},
                               {"last_line_excluded_entries", excluded},
                               {"pass", prod_pass}};

    // Generic-mu B and D elements.
    double b_worst = 0, d_worst = 0;
    const std::vector<cplx> mus{{0.23, 0.31}, {-0.41, 0.12}, {0.65, -0.27}};
    std::vector<Monodromy> mono;
    for (cplx mu : mus) mono.push_back(monodromy_entries(p, mu));
    for (auto [a, b] : pairs) {
        const DensePair sb = dense_pair(basis, recs[a].Q, k1, 1, recs[b].Q, k2, 1);
        const DensePair sd = dense_pair(basis, recs[a].Q, k1, 1, recs[b].Q, k1, 1);
        const double nb = sb.bra.norm() * sb.ket.norm(), nd = sd.bra.norm() * sd.ket.norm();
        for (size_t m = 0; m < mus.size(); ++m) {
            b_worst = std::max(b_worst, std::abs(b_element(p, recs[a].Q, recs[b].Q, k1, k2, mus[m]) -
                                                 brute_operator(sb, mono[m].B)) / nb);
            d_worst = std::max(d_worst, std::abs(d_element(p, recs[a].Q, recs[b].Q, k1, mus[m]) -
                                                 brute_operator(sd, mono[m].D)) / nd);
        }
    }
    const bool mu_pass = std::max(b_worst, d_worst) < t_or;
    rep["generic_mu_elements"] = {{"b_max_deviation", b_worst}, {"d_max_deviation", d_worst}, {"pass", mu_pass}};

    // Form factors between eigenstates at the same twist.
    std::vector<cplx> norms;
    for (const auto& r : recs) norms.push_back(sp_same_q(p, r.Q, 1.0).izergin);
    const double t_ff = tolerance(c, "form_factor"), t_cross = tolerance(c, "form_cross"),
                 t_pm = tolerance(c, "pm_equality");
    json ffs = json::array();
    double ff_worst = 0, cross_worst = 0, pm_worst = 0;
    bool ff_pass = true;
    int failures = 0;
    for (auto [a, b] : pairs) {
        const EigenRecord &ra = recs[a], &rb = recs[b];
        const DensePair st = dense_pair(basis, ra.Q, k1, 1, rb.Q, k1, 1);
        const double np = st.bra.norm() * st.ket.norm();
        const cplx nd = std::sqrt(norms[a] * norms[b]);
        for (int n : site_list(c)) {
            cplx pm_roots = 0.0, pm_tau = 0.0;
            bool have_pm = false;
            const cplx bm = brute_local(st, LocalOp::Minus, n, N), bp = brute_local(st, LocalOp::Plus, n, N);
            for (const auto& op : c.operators) {
                cplx vr, vt, brute;
                if (op == "z") {
                    vr = ff_sigma_z(p, ra, rb, k1, 1, n, FFForm::Roots);
                    vt = ff_sigma_z(p, ra, rb, k1, 1, n, FFForm::Tau);
                    brute = brute_local(st, LocalOp::Z, n, N);
                } else {
                    if (!have_pm) {
                        pm_roots = ff_sigma_pm(p, ra, rb, k1, 1, n, FFForm::Roots);
                        pm_tau = ff_sigma_pm(p, ra, rb, k1, 1, n, FFForm::Tau);
                        have_pm = true;
                    }
                    vr = pm_roots;
                    vt = pm_tau;
                    brute = op == "+" ? bp : bm;
                }
                auto metric = [np](cplx x, cplx y) { return std::abs(x - y) / std::max(std::abs(y), np); };
                const double dev = std::max(metric(vr, brute), metric(vt, brute));
                const double cross = metric(vr, vt);
                const bool ok = dev < t_ff && cross < t_cross;
                ff_worst = std::max(ff_worst, dev);
                cross_worst = std::max(cross_worst, cross);
                ff_pass = ff_pass && ok;
                failures += ok ? 0 : 1;
                ffs.push_back({{"pair", {a, b}},       {"site", n},
                               {"operator", op},        {"roots", to_json(vr)},
                               {"tau", to_json(vt)},    {"brute", to_json(brute)},
                               {"deviation", dev},      {"cross_deviation", cross},
                               {"norm_divided", to_json(vr / nd)}, {"pass", ok}});
            }
            const bool both = std::count(c.operators.begin(), c.operators.end(), "+") &&
                              std::count(c.operators.begin(), c.operators.end(), "-");
            if (both) pm_worst = std::max(pm_worst, std::abs(bp - bm) / std::max(std::abs(bm), np));
        }
    }
    const bool pm_claimed = std::count(c.operators.begin(), c.operators.end(), "+") &&
                            std::count(c.operators.begin(), c.operators.end(), "-");
    const bool pm_pass = !pm_claimed || pm_worst < t_pm;
    rep["form_factors"] = ffs;

    const bool pass = sp_pass && orth_pass && prod_pass && mu_pass && ff_pass && pm_pass;
    rep["summary"] = {
        {"scalar_products", {{"max_deviation", sp_worst}, {"pass", sp_pass}}},
        {"orthogonality", {{"max_ratio", orth_worst}, {"pass", orth_pass}}},
        {"product_identity", {{"max_deviation", prod_worst}, {"pass", prod_pass}}},
        {"generic_mu_elements", {{"max_deviation", std::max(b_worst, d_worst)}, {"pass", mu_pass}}},
        {"form_factors",
         {{"max_deviation", ff_worst}, {"max_cross_deviation", cross_worst}, {"failures", failures}, {"pass", ff_pass}}},
        {"sigma_plus_equals_minus", {{"max_deviation", pm_worst}, {"checked", pm_claimed}, {"pass", pm_pass}}},
        {"pass", pass}};
    rep["pass"] = pass;
    return {rep, pass};
}

}  // namespace sovxxz::app
