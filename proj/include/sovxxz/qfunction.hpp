#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sovxxz/numeric.hpp"

namespace sovxxz {

struct ModelParams {
    int N = 0;
    cplx eta;
    std::vector<cplx> xi;
    cplx kappa = 1.0;
    cplx kappa2 = 1.0;
    int eps = 1;
    int eps2 = 1;
    double delta_min = 0.05;

    // Throws ParameterError when eta is close to i*pi*k/m or the sets {xi_n, xi_n - eta}
    // are not separated by delta_min modulo i*pi.
    void validate() const;
};

// Seeded inhomogeneities in a box, retried until they pass ModelParams::validate.
std::vector<cplx> generate_xi(int N, cplx eta, std::uint64_t seed, double re_lo, double re_hi,
                              double im_lo, double im_hi, double min_sep, int max_tries = 100);

// f(l) = prod_j sinh((l - q_j)/2), stored by its roots with Im q_j in (-pi, pi].
class HalfPeriodTrigPoly {
public:
    HalfPeriodTrigPoly() = default;
    explicit HalfPeriodTrigPoly(std::vector<cplx> roots, bool wrap = true);

    cplx operator()(cplx l) const;
    // d/dl log f at l.
    cplx log_derivative(cplx l) const;
    const std::vector<cplx>& roots() const { return roots_; }
    int degree() const { return static_cast<int>(roots_.size()); }
    // Roots shifted by i*pi (the companion solution of the same eigenvalue).
    HalfPeriodTrigPoly shifted_ipi() const;

private:
    std::vector<cplx> roots_;
};

cplx eval_half_poly(const HalfPeriodTrigPoly& f, cplx l);

struct ModelFns {
    cplx a, d;
};
ModelFns eval_model_fns(const ModelParams& p, cplx l);
cplx fn_a(const ModelParams& p, cplx l);
cplx fn_d(const ModelParams& p, cplx l);

struct Ratios {
    cplx f_pq;        // (PQ)(u)/(PQ)(u-eta)
    cplx f_tilde;     // P(u-eta+i pi)/P(u+i pi) * Q(u)/Q(u-eta)
    cplx frak_a_q;    // d(u)/a(u) * Q(u+eta)/Q(u-eta)
};
Ratios eval_ratios(const HalfPeriodTrigPoly& P, const HalfPeriodTrigPoly& Q, const ModelParams& p,
                   cplx u);
cplx f_tilde(const HalfPeriodTrigPoly& P, const HalfPeriodTrigPoly& Q, const ModelParams& p, cplx u);
cplx frak_a(const HalfPeriodTrigPoly& Q, const ModelParams& p, cplx u);

struct QStructure {
    HalfPeriodTrigPoly qhat;
    double wronskian_residual = 0;
    int wronskian_sign = 0;
    double sum_rule_defect = 0;
    long sum_rule_k = 0;
    double pq_prop_residual = 0;
};
QStructure q_structure_residuals(const HalfPeriodTrigPoly& Q, const ModelParams& p,
                                 std::uint64_t grid_seed = 7);

// Seeded sample points on a segment that stay delta_min away from all xi and xi - eta.
std::vector<cplx> validation_grid(const ModelParams& p, int count, std::uint64_t seed);

// max_n |X(xi_n-eta)/X(xi_n) + X(xi_n-eta+i pi)/X(xi_n+i pi)| relative to the terms.
double pq_prop_residual(const HalfPeriodTrigPoly& X, const ModelParams& p);
// Residual of the product condition (PQ)(xi-eta)/(PQ)(xi) = same at xi + i pi.
double cond_pq_residual(const HalfPeriodTrigPoly& P, const HalfPeriodTrigPoly& Q,
                        const ModelParams& p);

}  // namespace sovxxz
