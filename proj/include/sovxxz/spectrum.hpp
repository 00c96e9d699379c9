#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sovxxz/lattice.hpp"
#include "sovxxz/qfunction.hpp"
#include "sovxxz/sov.hpp"

namespace sovxxz {

struct SpectrumTolerances {
    double tq = 1e-7;
    double bethe = 1e-9;
    double discrete = 1e-8;
    double eigenstate = 1e-8;
};

struct EigenRecord {
    std::vector<cplx> tau_at_xi;
    TauFunction tau;
    HalfPeriodTrigPoly Q, Qhat;
    int eps = 1;              // sign of the separate states built from Q
    CVector vector;           // oracle eigenvector of T_K(xi_1)
    double tq_residual = 0;
    double bethe_residual = 0;      // max_j |aQ(q_j) - 1|
    double discrete_residual = 0;   // tau(xi) tau(xi - eta) = -a(xi) d(xi - eta)
    double eigenstate_residual = 0;
    double wronskian_residual = 0;
    int wronskian_sign = 0;
    double sum_rule_defect = 0;
    long sum_rule_k = 0;
    bool certified = false;
};

// Q from the TQ relation sampled at 2N+3 seeded points; roots of the nullspace polynomial in W = e^l.
HalfPeriodTrigPoly q_from_tau(const ModelParams& p, const TauFunction& tau, std::uint64_t seed = 11);

// Damped Newton on F_j = a(q_j) Q(q_j - eta) - d(q_j) Q(q_j + eta).
HalfPeriodTrigPoly refine_bethe(const ModelParams& p, const HalfPeriodTrigPoly& Q, int max_iter = 50);

// max over a seeded grid of |tau Q + a Q(.-eta) - d Q(.+eta)| / (sum of the term magnitudes).
double tq_residual(const ModelParams& p, const TauFunction& tau, const HalfPeriodTrigPoly& Q,
                   std::uint64_t seed = 13);
double bethe_residual(const ModelParams& p, const HalfPeriodTrigPoly& Q);
double discrete_residual(const ModelParams& p, const TauFunction& tau);
// Transfer matrices at the three seeded points used by eigenstate_residual.
struct TransferSamples {
    std::vector<cplx> mu;
    std::vector<CMatrix> T;
};
TransferSamples transfer_samples(const ModelParams& p, cplx kappa, std::uint64_t seed = 17);

// Residual of T_K(mu)|Q,kappa,eps> = tau(mu)|Q,kappa,eps> at three seeded mu.
double eigenstate_residual(const SovBasis& basis, const TauFunction& tau, const HalfPeriodTrigPoly& Q,
                           cplx kappa, int eps, std::uint64_t seed = 17);
double eigenstate_residual(const SovBasis& basis, const TauFunction& tau, const HalfPeriodTrigPoly& Q,
                           cplx kappa, int eps, const TransferSamples& samples);

// Fill every residual of rec; returns the list of failed checks (empty when certified).
// samples may be shared across records of the same kappa; computed when null.
std::vector<std::string> evaluate_record(const SovBasis& basis, EigenRecord& rec, cplx kappa,
                                         const SpectrumTolerances& tol = {},
                                         const TransferSamples* samples = nullptr);
// Throws CertificationError naming the failed checks; otherwise stamps the record certified.
EigenRecord certify(const SovBasis& basis, EigenRecord rec, cplx kappa, const SpectrumTolerances& tol = {});

// Oracle eigenvalues -> Q -> refined Q -> certified records, ordered like spectrum_oracle.
std::vector<EigenRecord> solve_spectrum(const ModelParams& p, cplx kappa, std::uint64_t seed = 11,
                                        const SpectrumTolerances& tol = {});

}  // namespace sovxxz
