#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "sovxxz/errors.hpp"

using namespace sovxxz;

namespace {

// Distance between root multisets modulo 2 pi i, compared through e^q.
double root_set_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double w = 0;
    for (cplx x : a) {
        double best = 1e300;
        for (cplx y : b) best = std::min(best, std::abs(std::exp(x) - std::exp(y)));
        w = std::max(w, best);
    }
    return w;
}

}  // namespace

TEST_CASE("spectrum completeness and certification") {
    for (int N : {2, 3, 4}) {
        const auto& recs = fx::records(N);
        CHECK(static_cast<int>(recs.size()) == (1 << N));
        for (const auto& r : recs) {
            CHECK(r.certified);
            CHECK(r.bethe_residual < 1e-9);
            CHECK(r.eigenstate_residual < 1e-8);
        }
    }
    // At N=2 the eigenvalues come in +- pairs.
    const auto& r2 = fx::records(2);
    for (const auto& a : r2) {
        double best = 1e300;
        for (const auto& b : r2) best = std::min(best, fx::tau_gap(a.tau_at_xi, b.tau_at_xi, -1.0));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("certification negative control") {
    const ModelParams p = fx::params(3);
    const SovBasis basis(p);
    EigenRecord rec = fx::records(3)[0];
    std::vector<cplx> t = rec.tau_at_xi;
    t[0] *= 1.01;
    rec.tau_at_xi = t;
    rec.tau = TauFunction(p.xi, t);
    const auto failed = evaluate_record(basis, rec, p.kappa);
    CHECK(std::find(failed.begin(), failed.end(), "discrete") != failed.end());
    CHECK_FALSE(rec.certified);
    CHECK_THROWS_AS(certify(basis, rec, p.kappa), CertificationError);
    CHECK(certify(basis, fx::records(3)[1], p.kappa).certified);
}

TEST_CASE("plus-minus pairs and Q-hat") {
    const ModelParams p = fx::params(3);
    const auto& recs = fx::records(3);
    for (const auto& r : recs) {
        const HalfPeriodTrigPoly qn = q_from_tau(p, r.tau.negated());
        CHECK(root_set_gap(qn.roots(), r.Q.shifted_ipi().roots()) < 1e-7);
        CHECK(root_set_gap(r.Qhat.roots(), r.Q.shifted_ipi().roots()) < 1e-7);
        const EigenRecord* partner = nullptr;
        for (const auto& s : recs)
            if (fx::tau_gap(r.tau_at_xi, s.tau_at_xi, -1.0) < 1e-9) partner = &s;
        REQUIRE(partner != nullptr);
        CHECK(root_set_gap(partner->Q.roots(), r.Q.shifted_ipi().roots()) < 1e-7);
        for (int j = 0; j < p.N; ++j) {
            const cplx x = p.xi[j];
            CHECK(rel_err(std::abs(r.tau(x) * r.tau(x - p.eta)), std::abs(partner->tau(x) * partner->tau(x - p.eta))) < 1e-12);
        }
        CHECK(q_structure_residuals(qn, p).sum_rule_defect < 1e-7);
    }
}

TEST_CASE("q_from_tau at N=1 matches the closed form") {
    const ModelParams p = fx::params(1);
    for (const auto& o : spectrum_oracle(p, p.kappa)) {
        const cplx x = p.xi[0], t = o.tau(x), r = -t / fn_a(p, x);
        const cplx y = (std::exp(0.5 * p.eta) - r) / (std::exp(-0.5 * p.eta) - r);
        const cplx q = x - std::log(y);
        const HalfPeriodTrigPoly Q = q_from_tau(p, o.tau);
        CHECK(std::abs(std::exp(Q.roots()[0]) - std::exp(q)) < 1e-10 * std::abs(std::exp(q)));
    }
}

TEST_CASE("Bethe refinement") {
    const ModelParams p = fx::params(3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e-4, 1e-4);
    for (const auto& r : fx::records(3)) {
        const HalfPeriodTrigPoly again = refine_bethe(p, r.Q);
        CHECK(root_set_gap(again.roots(), r.Q.roots()) < 1e-12 * 10);
        std::vector<cplx> pert = r.Q.roots();
        for (auto& q : pert) q += cplx(u(rng), u(rng));
        const HalfPeriodTrigPoly back = refine_bethe(p, HalfPeriodTrigPoly(pert));
        CHECK(root_set_gap(back.roots(), r.Q.roots()) < 1e-10);
        for (cplx q : r.Q.roots()) CHECK(std::abs(frak_a(r.Q, p, q) - 1.0) < 1e-9);
        const HalfPeriodTrigPoly raw = q_from_tau(p, r.tau);
        CHECK(root_set_gap(raw.roots(), r.Q.roots()) < 1e-8);
    }
    std::vector<cplx> coll = fx::records(3)[0].Q.roots();
    coll[1] = coll[0] + 1e-4;
    CHECK_THROWS_AS(refine_bethe(p, HalfPeriodTrigPoly(coll)), DegeneracyError);
}

TEST_CASE("f tilde equals the eigenvalue ratio") {
    const ModelParams p = fx::params(3);
    const auto& recs = fx::records(3);
    for (const auto& a : recs)
        for (const auto& b : recs)
            for (cplx x : p.xi) CHECK(rel_err(f_tilde(a.Q, b.Q, p, x), -a.tau(x) / b.tau(x)) < 1e-8);
}

TEST_CASE("twisted spectrum certifies") {
    const auto& recs = fx::records(3, {1.7, 0.0});
    CHECK(recs.size() == 8);
    for (const auto& r : recs) CHECK(r.certified);
}
