#include "doctest.h"
#include "fixtures.hpp"
#include "sovxxz/errors.hpp"

using namespace sovxxz;

TEST_CASE("SoV basis") {
    const ModelParams p = fx::params(3);
    const SovBasis basis(p);
    CVector up = CVector::Zero(8);
    up(0) = 1.0;
    CHECK((basis.ket(0) - up).norm() < 1e-15);
    for (cplx l : fx::random_points(2, 3)) {
        const Monodromy m = monodromy_entries(p, l);
        for (SovIndex h = 0; h < 8; ++h) {
            CHECK((m.D * basis.ket(h) - d_h(p, h, l) * basis.ket(h)).norm() < 1e-9 * basis.ket(h).norm() * std::abs(d_h(p, h, l)) + 1e-14);
            CHECK(sov_action_residuals(basis, l).max() < 1e-8);
        }
    }
    for (SovIndex h = 0; h < 8; ++h)
        for (SovIndex k = 0; k < 8; ++k) {
            const cplx v = pair(basis.bra(h), basis.ket(k)), vh = sov_measure_vdm(p, h);
            if (h == k)
                CHECK(rel_err(v, 1.0 / vh) < 1e-9);
            else
                CHECK(std::abs(v * vh) < 1e-9);
        }
    CHECK(sov_measure_vdm(p, 0) == vandermonde(p.xi));
    CHECK(shifted_xi(p, 0b101)[2] == p.xi[2] - p.eta);
    CHECK(h_bit(0b101, 2) == 0);
}

TEST_CASE("separate states") {
    const ModelParams p1 = fx::params(1);
    const SovBasis b1(p1);
    const HalfPeriodTrigPoly P(fx::random_points(1, 12));
    const cplx kappa{1.3, 0.2};
    for (int eps : {1, -1}) {
        const SovState s = separate_state(b1, P, kappa, eps, Side::Ket, true);
        CHECK(rel_err(s.coefficients[0], double(eps) * kappa * P(p1.xi[0]) / P(p1.xi[0] - p1.eta)) < 1e-14);
        CHECK(rel_err(s.coefficients[1], 1.0) < 1e-14);
    }

    const ModelParams p = fx::params(3);
    const SovBasis basis(p);
    const HalfPeriodTrigPoly Q(fx::random_points(3, 13));
    const SovState un = separate_state(basis, Q, kappa, 1, Side::Ket, false);
    const auto alt = separate_state_ket_alt(p, Q, kappa, 1);
    for (SovIndex h = 0; h < 8; ++h) CHECK(rel_err(un.coefficients[h], alt[h]) < 1e-12);
    // Normalized and unnormalized states are proportional.
    const SovState nk = separate_state(basis, Q, kappa, 1, Side::Ket, true);
    const cplx ratio = nk.embedded.dot(un.embedded) / nk.embedded.squaredNorm();
    CHECK((un.embedded - ratio * nk.embedded).norm() < 1e-12 * un.embedded.norm());
    const SovState ub = separate_state(basis, Q, kappa, 1, Side::Bra, false);
    const SovState nb = separate_state(basis, Q, kappa, 1, Side::Bra, true);
    const cplx rb = nb.embedded.dot(ub.embedded) / nb.embedded.squaredNorm();
    CHECK((ub.embedded - rb * nb.embedded).norm() < 1e-12 * ub.embedded.norm());

    // A root of P at xi_n - eta makes the normalized state singular.
    std::vector<cplx> bad = Q.roots();
    bad[0] = p.xi[1] - p.eta;
    CHECK_THROWS_AS(separate_state(basis, HalfPeriodTrigPoly(bad), kappa, 1, Side::Ket, true), SingularError);
}

TEST_CASE("eigen separate states") {
    const ModelParams p = fx::params(3);
    const SovBasis basis(p);
    const auto& recs = fx::records(3);
    for (const auto& r : recs) {
        const CVector plus = separate_state(basis, r.Q, p.kappa, 1, Side::Ket, true).embedded;
        const CVector minus = separate_state(basis, r.Qhat, p.kappa, -1, Side::Ket, true).embedded;
        CHECK((plus - minus).norm() < 1e-9 * plus.norm());
    }
    for (size_t a = 0; a < recs.size(); ++a)
        for (size_t b = 0; b < recs.size(); ++b) {
            const CVector bra = separate_state(basis, recs[a].Q, p.kappa, 1, Side::Bra, true).embedded;
            const CVector ket = separate_state(basis, recs[b].Q, p.kappa, 1, Side::Ket, true).embedded;
            const double ov = std::abs(pair(bra, ket)) / (bra.norm() * ket.norm());
            if (a == b)
                CHECK(ov > 1e-6);
            else
                CHECK(ov < 1e-8);
        }
}
