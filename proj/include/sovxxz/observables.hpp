#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sovxxz/lattice.hpp"
#include "sovxxz/qfunction.hpp"
#include "sovxxz/sov.hpp"
#include "sovxxz/spectrum.hpp"

namespace sovxxz {

using Poly = HalfPeriodTrigPoly;

// Entries closer than this (in |sinh| of the difference) to a removable singularity are
// evaluated as a contour mean in the row variable.
inline constexpr double kRemovableRadius = 0.05;

// Scalar product <P,kappa,eps|Q,kappa',eps'> of normalized separate states, alpha = eps eps' kappa'/kappa.
cplx sp_direct(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha);
// The same as the literal sum over the 2^N SoV labels.
cplx sp_direct_sum(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha);
cplx sp_izergin(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha);

// Slavnov-type matrix S^{(alpha)}_{j,k} with rows q_j and columns p_k.
CMatrix slavnov_matrix(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha);
// coth((p_k - q_j - eta)/2) with rows j, columns k.
CMatrix coth_matrix(const ModelParams& p, const Poly& P, const Poly& Q);
cplx coth_det_closed_form(const ModelParams& p, const Poly& P, const Poly& Q);
// Requires the product condition on P, Q (residual below cond_tol). gamma selects the s_gamma variant.
cplx sp_slavnov(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha,
                std::optional<cplx> gamma = std::nullopt, double cond_tol = 1e-7);

struct ProductCheck {
    cplx lhs, rhs;
    double deviation = 0;
    cplx ratio_to_printed;  // rhs / (rhs with the extra 1/2^{N(N-1)} factor)
};
CMatrix product_matrix(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha, cplx beta);
ProductCheck sp_product_check(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha, cplx beta);

struct LastLineCheck {
    double max_entry = 0;  // largest last-line entry
    double scale = 0;      // largest full entry
    int excluded = 0;      // removable points p_k = q_j mod i pi that were skipped
};
// Last line of the product matrix at beta = e^eta / alpha.
LastLineCheck product_last_line(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha);

struct TauForms {
    cplx izergin, slavnov;
};
// z defaults to the roots of recQ.Q.
TauForms sp_tau(const ModelParams& p, const EigenRecord& recP, const EigenRecord& recQ, cplx kappa, cplx kappa2,
                std::optional<std::vector<cplx>> z = std::nullopt);
// tau-labelled matrix [tauhat_Q(z_i)-tauhat_Q(p_k)]/sinh(z_i-p_k) - alpha[...]/sinh(z_i-p_k-eta).
CMatrix tau_matrix(const ModelParams& p, const TauFunction& tauP, const TauFunction& tauQ,
                   const std::vector<cplx>& pr, const std::vector<cplx>& z, cplx alpha);

struct SameQ {
    cplx izergin, compact;
};
SameQ sp_same_q(const ModelParams& p, const Poly& Q, cplx alpha);

enum class FFForm { Roots, Tau };
enum class LocalOp { Z, Plus, Minus };

// <P,kappa,eps| sigma^z_n |Q,kappa,eps>, n is 1-based.
cplx ff_sigma_z(const ModelParams& p, const EigenRecord& recP, const EigenRecord& recQ, cplx kappa, int eps,
                int n, FFForm form, std::optional<std::vector<cplx>> z = std::nullopt);
// Determinant value claimed for both sigma^+_n and sigma^-_n.
cplx ff_sigma_pm(const ModelParams& p, const EigenRecord& recP, const EigenRecord& recQ, cplx kappa, int eps,
                 int n, FFForm form, std::optional<std::vector<cplx>> z = std::nullopt);

// <P,kappa,+|B(mu)|Q,kappa2,+> and <P,kappa,+|D(mu)|Q,kappa,+> for generic mu.
cplx b_element(const ModelParams& p, const Poly& P, const Poly& Q, cplx kappa, cplx kappa2, cplx mu);
cplx d_element(const ModelParams& p, const Poly& P, const Poly& Q, cplx kappa, cplx mu);

// Dense oracle: bilinear <P,kappa,eps| op |Q,kappa2,eps2> with normalized embedded states.
struct DensePair {
    CVector bra, ket;
};
DensePair dense_pair(const SovBasis& basis, const Poly& P, cplx kappa, int eps, const Poly& Q, cplx kappa2, int eps2);
cplx brute_local(const DensePair& st, LocalOp op, int n, int N);
cplx brute_operator(const DensePair& st, const CMatrix& op);

struct IdentityBench {
    double af_if = 0;          // A_x[f] vs I_{x,z}[f E_z]
    double af_if_zero = 0;     // f = 0: both sides equal 1
    double xm_beta = 0;        // X M^{(beta)} against the residue closed form
    double izergin_slavnov = 0;
    double ize2 = 0, ize3 = 0; // intermediate double-period forms vs sp_izergin
    double ext_limit = 0;      // extension limit at x_L = 30
    int pairs_used = 0;
};
// (i) and (iv) use seeded generic data; (ii)-(iii) use the supplied certified records.
IdentityBench identity_bench(const ModelParams& p, const std::vector<EigenRecord>& recs, std::uint64_t seed = 5);

// Building blocks of the identity bench, exposed for tests.
cplx af_operator(const std::vector<cplx>& x, cplx eta, const std::function<cplx(cplx)>& f);
cplx if_operator(const std::vector<cplx>& x, const std::vector<cplx>& z, cplx eta,
                 const std::function<cplx(cplx)>& f);

}  // namespace sovxxz
