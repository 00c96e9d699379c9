#include "doctest.h"
#include "fixtures.hpp"
#include "sovxxz/errors.hpp"

using namespace sovxxz;

namespace {

cplx prod_sinh_half(const std::vector<cplx>& r, cplx l) {
    cplx v = 1.0;
    for (cplx q : r) v *= std::sinh(0.5 * (l - q));
    return v;
}

cplx prod_sinh(const std::vector<cplx>& xi, cplx shift, cplx l) {
    cplx v = 1.0;
    for (cplx x : xi) v *= std::sinh(l - x + shift);
    return v;
}

}  // namespace

TEST_CASE("half-period trigonometric polynomial") {
    const auto r = fx::random_points(3, 4);
    const HalfPeriodTrigPoly Q(r);
    CHECK(std::abs(Q(r[0])) < 1e-15);
    CHECK(std::abs(Q(r[0] + 2.0 * kPi * I)) < 1e-14);
    const cplx l{0.37, -0.21};
    CHECK(rel_err(Q(l + 2.0 * kPi * I), -Q(l)) < 1e-12);
    CHECK(rel_err(HalfPeriodTrigPoly(fx::random_points(4, 4))(l + 2.0 * kPi * I),
                  HalfPeriodTrigPoly(fx::random_points(4, 4))(l)) < 1e-12);
    CHECK(rel_err(Q(l), prod_sinh_half(r, l)) < 1e-14);
    CHECK(eval_half_poly(Q, l) == Q(l));
    const HalfPeriodTrigPoly W({cplx(0.1, 5.0)});
    CHECK(W.roots()[0].imag() <= kPi);
    CHECK(W.roots()[0].imag() > -kPi);
}

TEST_CASE("model functions") {
    const ModelParams p = fx::params(3);
    CHECK(std::abs(eval_model_fns(p, p.xi[0]).d) < 1e-15);
    CHECK(std::abs(eval_model_fns(p, p.xi[0] - p.eta).a) < 1e-15);
    const cplx l{0.2, 0.1};
    CHECK(rel_err(fn_a(p, l), prod_sinh(p.xi, p.eta, l)) < 1e-14);
    CHECK(rel_err(fn_d(p, l), prod_sinh(p.xi, 0.0, l)) < 1e-14);
}

TEST_CASE("ratios") {
    const ModelParams p = fx::params(3);
    const auto pr = fx::random_points(3, 31), qr = fx::random_points(3, 32);
    const HalfPeriodTrigPoly P(pr), Q(qr);
    const cplx u{0.11, 0.27};
    const Ratios r = eval_ratios(P, Q, p, u);
    const cplx f_pq = prod_sinh_half(pr, u) * prod_sinh_half(qr, u) /
                      (prod_sinh_half(pr, u - p.eta) * prod_sinh_half(qr, u - p.eta));
    const cplx ft = prod_sinh_half(pr, u - p.eta + I * kPi) / prod_sinh_half(pr, u + I * kPi) *
                    prod_sinh_half(qr, u) / prod_sinh_half(qr, u - p.eta);
    const cplx fa = prod_sinh(p.xi, 0.0, u) / prod_sinh(p.xi, p.eta, u) * prod_sinh_half(qr, u + p.eta) /
                    prod_sinh_half(qr, u - p.eta);
    CHECK(rel_err(r.f_pq, f_pq) < 1e-12);
    CHECK(rel_err(r.f_tilde, ft) < 1e-12);
    CHECK(rel_err(r.frak_a_q, fa) < 1e-12);
    CHECK(std::abs(f_tilde(P, Q, p, qr[0])) < 1e-14);
    CHECK_THROWS_AS(f_tilde(P, Q, p, qr[0] + p.eta), SingularError);
}

TEST_CASE("f tilde of an eigen Q with itself is -1 at the inhomogeneities") {
    const ModelParams p = fx::params(3);
    for (const auto& r : fx::records(3))
        for (cplx x : p.xi) CHECK(std::abs(f_tilde(r.Q, r.Q, p, x) + 1.0) < 1e-9);
}

TEST_CASE("Q structure") {
    const ModelParams p = fx::params(3);
    for (const auto& r : fx::records(3)) {
        const QStructure s = q_structure_residuals(r.Q, p);
        CHECK(s.wronskian_residual < 1e-8);
        CHECK(s.sum_rule_defect < 1e-8);
        CHECK(std::abs(s.wronskian_sign) == 1);
        CHECK(s.pq_prop_residual < 1e-8);
    }
    // Random roots violate the Bethe equations; reported, not exact.
    const QStructure bad = q_structure_residuals(HalfPeriodTrigPoly(fx::random_points(3, 77)), p);
    CHECK(bad.pq_prop_residual > 1e-3);
}

TEST_CASE("parameter validation") {
    ModelParams p = fx::params(3);
    CHECK(generate_xi(3, p.eta, 42, -1, 1, -0.4, 0.4, 0.1) == p.xi);
    ModelParams dup = p;
    dup.xi[1] = dup.xi[0];
    CHECK_THROWS_AS(dup.validate(), ParameterError);
    ModelParams shifted = p;
    shifted.xi[1] = shifted.xi[0] - p.eta + I * kPi;
    CHECK_THROWS_AS(shifted.validate(), ParameterError);
    ModelParams bad_eta = p;
    bad_eta.eta = I * kPi / 2.0;
    CHECK_THROWS_AS(bad_eta.validate(), ParameterError);
    ModelParams zero = p;
    zero.kappa = 0.0;
    CHECK_THROWS_AS(zero.validate(), ParameterError);
    CHECK_THROWS_AS(generate_xi(3, p.eta, 1, 0, 0.01, 0, 0.01, 0.1), ParameterError);
}
