#pragma once

#include <vector>

#include "sovxxz/numeric.hpp"
#include "sovxxz/qfunction.hpp"

namespace sovxxz {

inline constexpr int kMaxSites = 8;

// 4x4 R-matrix on auxiliary (x) site, basis index 2*aux + site, 0 = spin up.
CMatrix r_matrix(cplx lambda, cplx eta);

// Embed a 2x2 operator at site n (1-based; site 1 is the leftmost tensor factor).
CMatrix embed_site(const CMatrix& op2, int n, int N);

// Standard single-site matrices, index 0 = up.
CMatrix elementary(int i, int j);  // E^{ij}, i,j in {1,2}
CMatrix pauli_z();
CMatrix sigma_plus();
CMatrix sigma_minus();

struct Monodromy {
    CMatrix A, B, C, D;
};

// T_0(l) = R_{0N}(l - xi_N) ... R_{01}(l - xi_1), contracted site by site on the 2x2 auxiliary blocks.
Monodromy monodromy_entries(const ModelParams& p, cplx lambda);

// kappa^{-1} B(l) + kappa C(l).
CMatrix transfer_k(const ModelParams& p, cplx lambda, cplx kappa);
inline CMatrix transfer_k(const ModelParams& p, cplx lambda) { return transfer_k(p, lambda, p.kappa); }

// Entry (row, col) of K T(l) = [[kappa C, kappa D], [kappa^{-1} A, kappa^{-1} B]], 1-based.
CMatrix twisted_monodromy_entry(const Monodromy& m, cplx kappa, int row, int col);

// Eigenvalue interpolated through its values at the inhomogeneities.
class TauFunction {
public:
    TauFunction() = default;
    TauFunction(std::vector<cplx> xi, std::vector<cplx> values);
    cplx operator()(cplx l) const;
    const std::vector<cplx>& at_xi() const { return values_; }
    TauFunction negated() const;

private:
    std::vector<cplx> xi_, values_;
};

struct OracleEigen {
    cplx value_xi1;
    CVector vector;            // right eigenvector of T_K(xi_1)
    TauFunction tau;
    double interp_check = 0;   // relative mismatch of interpolated tau vs Rayleigh quotient at a test point
};

// All 2^N eigenvectors of T_K(xi_1) with tau(xi_j) from Rayleigh quotients.
std::vector<OracleEigen> spectrum_oracle(const ModelParams& p, cplx kappa, double gap_factor = 1e-6);

enum class DressingForm { Direct, Inverse, InverseShifted };

struct DressedOperator {
    CMatrix op;
    double residual = 0;  // Frobenius distance to the embedded elementary matrix
};

// Local elementary matrix E_n^{ij} rebuilt from monodromy entries dressed by transfer matrices.
DressedOperator dress_local_operator(const ModelParams& p, int n, int i, int j,
                                     DressingForm form = DressingForm::Direct, double tol = 1e-8);

// Operator-identity residuals used by the validation suite.
double yang_baxter_residual(cplx lambda, cplx mu, cplx eta);
// [R(l), K (x) K] with K = [[0, kappa], [1/kappa, 0]].
double twist_commutator(cplx lambda, cplx eta, cplx kappa);
// Relative RTT residual on aux (x) aux (x) quantum space.
double rtt_residual(const ModelParams& p, cplx lambda, cplx mu);
// A(l) D(l - eta) - B(l) C(l - eta) against a(l) d(l - eta), relative.
double qdet_residual(const ModelParams& p, cplx lambda);
double transfer_commutator(const ModelParams& p, cplx lambda, cplx mu);
// max(|C|up>|, |D|up> - d|up>|) relative to |D|.
double reference_state_residual(const ModelParams& p, cplx lambda);

}  // namespace sovxxz
