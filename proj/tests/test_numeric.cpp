#include "doctest.h"
#include "fixtures.hpp"
#include "sovxxz/errors.hpp"

using namespace sovxxz;

namespace {

// Laplace expansion along the first row.
cplx cofactor_det(const CMatrix& m) {
    const Eigen::Index n = m.rows();
    if (n == 1) return m(0, 0);
    cplx s = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        CMatrix minor(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i)
            for (Eigen::Index j = 0, k = 0; j < n; ++j)
                if (j != c) minor(i - 1, k++) = m(i, j);
        s += (c % 2 ? -1.0 : 1.0) * m(0, c) * cofactor_det(minor);
    }
    return s;
}

}  // namespace

TEST_CASE("det_lu") {
    CHECK(std::abs(det_lu(CMatrix::Identity(4, 4)) - 1.0) < 1e-15);
    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(std::abs(det_lu(swap) + 1.0) < 1e-15);
    const CMatrix m = fx::random_matrix(6, 3);
    CHECK(rel_err(det_lu(m), cofactor_det(m)) < 1e-12);
    CHECK(det_lu(CMatrix::Zero(3, 3)) == 0.0);
    CHECK_THROWS_AS(det_lu(CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("vandermonde") {
    CHECK(vandermonde({}) == 1.0);
    CHECK(vandermonde({{0.3, 0.1}}) == 1.0);
    const cplx a{0.2, 0.1}, b{-0.4, 0.3};
    CHECK(rel_err(vandermonde({a, b}), std::sinh(b - a)) < 1e-15);
    const auto x = fx::random_points(4, 9);
    CMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 1; j <= 4; ++j) m(i, j - 1) = std::exp(double(2 * j - 5) * x[i]) / std::pow(2.0, j - 1);
    CHECK(rel_err(vandermonde(x), det_lu(m)) < 1e-11);
}

TEST_CASE("roots_monic") {
    auto r = roots_monic({{-1.0, 0.0}});
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] + 1.0) < 1e-14);
    CHECK(std::abs(r[1] - 1.0) < 1e-14);
    r = roots_monic({{6.0, -5.0}});
    CHECK(std::abs(r[0] - 2.0) < 1e-13);
    CHECK(std::abs(r[1] - 3.0) < 1e-13);
    CHECK(roots_monic({}).empty());
    const auto z = fx::random_points(8, 21, 2.0);
    const MonicPoly p = poly_from_roots(z);
    for (cplx w : roots_monic(p)) CHECK(std::abs(p(w)) < 1e-10);
}

TEST_CASE("eig_dense") {
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = cplx(0, 2);
    d(2, 2) = -3.0;
    const auto e = eig_dense(d);
    REQUIRE(e.size() == 3);
    for (const auto& ep : e) {
        int hits = 0;
        for (int k = 0; k < 3; ++k)
            if (std::abs(ep.value - d(k, k)) < 1e-14) {
                ++hits;
                CHECK(std::abs(std::abs(ep.vector(k)) - 1.0) < 1e-14);
            }
        CHECK(hits == 1);
    }
    CMatrix sx(2, 2);
    sx << 0, 1, 1, 0;
    const auto es = eig_dense(sx);
    CHECK(std::abs(es[0].value * es[1].value + 1.0) < 1e-14);
    const CMatrix m = fx::random_matrix(16, 5);
    for (const auto& ep : eig_dense(m))
        CHECK((m * ep.vector - ep.value * ep.vector).norm() / ep.vector.norm() < 1e-9);
    CHECK_THROWS_AS(eig_dense(CMatrix::Zero(2, 3)), DimensionError);
    CHECK_THROWS_AS(eig_dense(CMatrix::Identity(8, 8), 4), SizeError);
}

TEST_CASE("contour_mean and strip wrapping") {
    const cplx v = contour_mean([](cplx u) { return std::sinh(u) / u; }, 0.0);
    CHECK(std::abs(v - 1.0) < 1e-13);
    const cplx w = wrap_strip({0.3, 3 * kPi});
    CHECK(std::abs(w - cplx(0.3, kPi)) < 1e-13);
    CHECK(rel_err(1.0, 1.0 + 1e-10) < 2e-10);
}
