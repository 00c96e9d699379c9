#include "sovxxz/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sovxxz/errors.hpp"

namespace sovxxz {

cplx det_lu(const CMatrix& m) {
    if (m.rows() != m.cols())
        throw DimensionError("det_lu: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
    if (m.rows() == 0) return 1.0;
    return Eigen::PartialPivLU<CMatrix>(m).determinant();
}

cplx vandermonde(const std::vector<cplx>& xs) {
    cplx v = 1.0;
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j) v *= std::sinh(xs[j] - xs[i]);
    return v;
}

cplx MonicPoly::operator()(cplx w) const {
    cplx acc = 1.0;
    for (int k = degree() - 1; k >= 0; --k) acc = acc * w + coeffs[k];
    return acc;
}

static cplx poly_derivative(const MonicPoly& p, cplx w) {
    const int n = p.degree();
    cplx acc = static_cast<double>(n);
    for (int k = n - 1; k >= 1; --k) acc = acc * w + static_cast<double>(k) * p.coeffs[k];
    return acc;
}

std::vector<cplx> roots_monic(const MonicPoly& p) {
    const int n = p.degree();
    if (n == 0) return {};
    CMatrix comp = CMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeffs[i];
    Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
    if (es.info() != Eigen::Success) throw ConvergenceError("roots_monic: companion eigensolve failed", 0);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    // A few Newton steps tighten each root; a step is kept only if it lowers the residual.
    for (auto& w : r) {
        for (int it = 0; it < 5; ++it) {
            cplx f = p(w), df = poly_derivative(p, w);
            if (df == 0.0) break;
            cplx w2 = w - f / df;
            if (std::abs(p(w2)) < std::abs(f)) w = w2; else break;
        }
    }
    std::sort(r.begin(), r.end(), lex_less);
    return r;
}

MonicPoly poly_from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> c{1.0};
    for (cplx r : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    c.pop_back();
    return MonicPoly{c};
}

std::vector<EigenPair> eig_dense(const CMatrix& m, int max_dim) {
    if (m.rows() != m.cols()) throw DimensionError("eig_dense: non-square matrix");
    if (m.rows() > max_dim)
        throw SizeError("eig_dense: dimension " + std::to_string(m.rows()) + " exceeds cap " +
                        std::to_string(max_dim));
    Eigen::ComplexEigenSolver<CMatrix> es(m, true);
    if (es.info() != Eigen::Success) throw ConvergenceError("eig_dense: QR iteration did not converge", 0);
    const double mnorm = std::max(m.norm(), 1e-300);
    std::vector<EigenPair> out;
    out.reserve(m.rows());
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        CVector v = es.eigenvectors().col(k);
        v.normalize();
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        v *= std::conj(v(imax)) / std::abs(v(imax));
        const cplx lam = es.eigenvalues()(k);
        const double res = (m * v - lam * v).norm();
        if (res > 1e-9 * mnorm)
            throw ConvergenceError("eig_dense: eigenpair residual too large", static_cast<int>(k));
        out.push_back({lam, v});
    }
    return out;
}

cplx contour_mean(const std::function<cplx(cplx)>& f, cplx u0, double radius, int nodes) {
    cplx acc = 0.0;
    for (int m = 0; m < nodes; ++m) {
        const double th = 2.0 * kPi * (m + 0.5) / nodes;
        acc += f(u0 + radius * std::exp(I * th));
    }
    return acc / static_cast<double>(nodes);
}

cplx wrap_strip(cplx q) {
    double im = std::remainder(q.imag(), 2.0 * kPi);  // in [-pi, pi]
    if (im <= -kPi) im += 2.0 * kPi;
    return {q.real(), im};
}

double rel_err(cplx a, cplx b, double floor) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace sovxxz
