#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sovxxz {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Square-matrix determinant by LU with partial pivoting. Singular input gives 0.
cplx det_lu(const CMatrix& m);

// prod_{i<j} sinh(x_j - x_i); 1 for an empty or one-element list.
cplx vandermonde(const std::vector<cplx>& xs);

// Monic polynomial W^N + c_{N-1} W^{N-1} + ... + c_0.
struct MonicPoly {
    std::vector<cplx> coeffs;  // c_0 .. c_{N-1}
    int degree() const { return static_cast<int>(coeffs.size()); }
    cplx operator()(cplx w) const;
};

// Roots with multiplicity, sorted lexicographically by (real, imag).
std::vector<cplx> roots_monic(const MonicPoly& p);

// Expand prod (W - r_j) back into monic coefficients.
MonicPoly poly_from_roots(const std::vector<cplx>& roots);

struct EigenPair {
    cplx value;
    CVector vector;  // unit norm, largest component real positive
};

// Full eigendecomposition of a general complex matrix; dimension capped at max_dim.
std::vector<EigenPair> eig_dense(const CMatrix& m, int max_dim = 256);

// Mean of f over a small circle around u0. For f analytic in a punctured disc with a
// removable singularity at u0 this converges geometrically to the limit value.
cplx contour_mean(const std::function<cplx(cplx)>& f, cplx u0,
                  double radius = 1e-2, int nodes = 32);

// Lexicographic (real, imag) comparison used for deterministic orderings.
inline bool lex_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Map a root into the strip Im in (-pi, pi].
cplx wrap_strip(cplx q);

// Relative distance |a-b| / max(|a|,|b|,floor).
double rel_err(cplx a, cplx b, double floor = 1e-300);

}  // namespace sovxxz
