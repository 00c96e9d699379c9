#include "doctest.h"
#include "fixtures.hpp"
#include "sovxxz/errors.hpp"

using namespace sovxxz;

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

TEST_CASE("R-matrix") {
    const cplx eta{0.6, 0.35}, s = std::sinh(eta);
    const CMatrix r = r_matrix(0.0, eta);
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = expect(1, 2) = expect(2, 1) = s;
    CHECK((r - expect).norm() < 1e-15);
    CHECK(yang_baxter_residual({0.31, 0.12}, {-0.27, 0.4}, eta) < 1e-12);
    CHECK(twist_commutator({0.31, 0.12}, eta, {1.3, 0.2}) < 1e-12);
}

TEST_CASE("monodromy entries") {
    ModelParams p1 = fx::params(1);
    const cplx l{0.23, -0.17};
    const Monodromy m = monodromy_entries(p1, l);
    CHECK(std::abs(m.A(0, 0) - std::sinh(l - p1.xi[0] + p1.eta)) < 1e-14);
    CHECK(std::abs(m.A(1, 1) - std::sinh(l - p1.xi[0])) < 1e-14);
    CHECK(std::abs(m.A(0, 1)) + std::abs(m.A(1, 0)) < 1e-15);
    // C lowers nothing from the up state, and carries sinh(eta) from down to up.
    CHECK(std::abs(m.C(0, 0)) + std::abs(m.C(1, 0)) + std::abs(m.C(1, 1)) < 1e-15);
    CHECK(std::abs(m.C(0, 1) - std::sinh(p1.eta)) < 1e-14);

    const ModelParams p = fx::params(3);
    const Monodromy m3 = monodromy_entries(p, l);
    CVector up = CVector::Zero(8);
    up(0) = 1.0;
    CHECK((m3.C * up).norm() < 1e-14);
    CHECK((m3.D * up - fn_d(p, l) * up).norm() < 1e-14);
    CHECK(reference_state_residual(p, l) < 1e-12);
    CHECK(rtt_residual(fx::params(2), {0.31, 0.12}, {-0.27, 0.4}) < 1e-10);
    CHECK(qdet_residual(p, l) < 1e-10);

    ModelParams big = p;
    big.N = kMaxSites + 1;
    big.xi.resize(big.N, 0.0);
    CHECK_THROWS_AS(monodromy_entries(big, l), SizeError);
}

TEST_CASE("transfer matrix") {
    const ModelParams p = fx::params(3);
    CHECK(transfer_commutator(p, {0.31, 0.12}, {-0.27, 0.4}) < 1e-10);
    const cplx l{0.1, 0.2};
    const Monodromy m = monodromy_entries(p, l);
    CHECK((transfer_k(p, l, p.kappa2) - (m.B / p.kappa2 + p.kappa2 * m.C)).norm() < 1e-13);
    CHECK_THROWS_AS(transfer_k(p, l, 0.0), ParameterError);
    const ModelParams p1 = fx::params(1);
    const CMatrix t1 = transfer_k(p1, l, p1.kappa2);
    CHECK(std::abs(t1(0, 0)) + std::abs(t1(1, 1)) < 1e-15);
    CHECK(std::abs(t1(0, 1) - p1.kappa2 * std::sinh(p1.eta)) < 1e-14);
    CHECK(std::abs(t1(1, 0) - std::sinh(p1.eta) / p1.kappa2) < 1e-14);
    CHECK((twisted_monodromy_entry(m, p.kappa2, 1, 2) - p.kappa2 * m.D).norm() < 1e-15);
    CHECK((twisted_monodromy_entry(m, p.kappa2, 2, 1) - m.A / p.kappa2).norm() < 1e-15);
}

TEST_CASE("spectrum oracle") {
    const ModelParams p = fx::params(3);
    const auto o = spectrum_oracle(p, p.kappa);
    const auto o2 = spectrum_oracle(p, p.kappa2);
    REQUIRE(o.size() == 8);
    cplx trace_sum = 0.0;
    for (const auto& e : o) trace_sum += e.value_xi1;
    CHECK(rel_err(transfer_k(p, p.xi[0]).trace(), trace_sum, 1.0) < 1e-9);
    for (const auto& a : o) {
        CHECK(a.interp_check < 1e-9);
        double neg = 1e300, iso = 1e300;
        for (const auto& b : o) neg = std::min(neg, fx::tau_gap(a.tau.at_xi(), b.tau.at_xi(), -1.0));
        for (const auto& b : o2) iso = std::min(iso, fx::tau_gap(a.tau.at_xi(), b.tau.at_xi(), 1.0));
        CHECK(neg < 1e-9);
        CHECK(iso < 1e-9);
        for (cplx mu : fx::random_points(3, 8)) {
            const CVector r = transfer_k(p, mu) * a.vector - a.tau(mu) * a.vector;
            CHECK(r.norm() / std::max(1.0, std::abs(a.tau(mu))) < 1e-9);
        }
    }
}

TEST_CASE("inverse problem") {
    const ModelParams p = fx::params(3);
    const CMatrix id = CMatrix::Identity(8, 8);
    for (int n = 1; n <= 3; ++n) {
        CMatrix sum = CMatrix::Zero(8, 8);
        for (int i = 1; i <= 2; ++i) {
            sum += dress_local_operator(p, n, i, i).op;
            for (int j = 1; j <= 2; ++j) {
                const CMatrix e = dress_local_operator(p, n, i, j).op;
                CHECK((e - embed_site(elementary(i, j), n, 3)).norm() < 1e-8);
                CHECK((dress_local_operator(p, n, i, j, DressingForm::Inverse).op - e).norm() < 1e-8);
                CHECK((dress_local_operator(p, n, i, j, DressingForm::InverseShifted).op - e).norm() < 1e-8);
            }
        }
        CHECK((sum - id).norm() < 1e-9);
        // Kronecker products built here, independently of embed_site.
        CMatrix left = CMatrix::Identity(1 << (n - 1), 1 << (n - 1)), right = CMatrix::Identity(1 << (3 - n), 1 << (3 - n));
        auto direct = [&](const CMatrix& op) { return kron(kron(left, op), right); };
        const CMatrix sp = dress_local_operator(p, n, 1, 2).op, sm = dress_local_operator(p, n, 2, 1).op;
        const CMatrix sz = dress_local_operator(p, n, 1, 1).op - dress_local_operator(p, n, 2, 2).op;
        CHECK((sp - direct(sigma_plus())).norm() < 1e-9);
        CHECK((sm - direct(sigma_minus())).norm() < 1e-9);
        CHECK((sz - direct(pauli_z())).norm() < 1e-9);
    }
    CMatrix e11 = CMatrix::Zero(2, 2);
    e11(0, 0) = 1.0;
    CHECK((dress_local_operator(p, 1, 1, 1).op - kron(e11, CMatrix::Identity(4, 4))).norm() < 1e-8);
    CHECK_THROWS_AS(dress_local_operator(p, 4, 1, 1), DimensionError);
}
