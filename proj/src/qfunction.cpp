#include "sovxxz/qfunction.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sovxxz/errors.hpp"

namespace sovxxz {

namespace {

// Distance of z to the lattice i*pi*Z.
double dist_mod_ipi(cplx z) {
    const double k = std::round(z.imag() / kPi);
    return std::abs(z - I * (kPi * k));
}

void check_den(cplx v, const char* name) {
    if (!(std::abs(v) > 1e-13) || !std::isfinite(std::abs(v)))
        throw SingularError(std::string("singular evaluation: ") + name + " vanishes");
}

}  // namespace

void ModelParams::validate() const {
    if (N < 1) throw ParameterError("N must be positive");
    if (static_cast<int>(xi.size()) != N) throw ParameterError("xi must have N entries");
    if (kappa == 0.0 || kappa2 == 0.0) throw ParameterError("twist must be nonzero");
    if (std::abs(eps) != 1 || std::abs(eps2) != 1) throw ParameterError("signs must be +1 or -1");
    for (int m = 1; m <= 6; ++m)
        for (int k = -6; k <= 6; ++k)
            if (std::abs(eta - I * (kPi * k / m)) < delta_min)
                throw ParameterError("eta is too close to i*pi*" + std::to_string(k) + "/" +
                                     std::to_string(m));
    for (int i = 0; i < N; ++i) {
        if (dist_mod_ipi(eta) < delta_min) throw ParameterError("eta too close to i*pi*Z");
        for (int j = i + 1; j < N; ++j) {
            const cplx pts_i[2] = {xi[i], xi[i] - eta};
            const cplx pts_j[2] = {xi[j], xi[j] - eta};
            for (cplx a : pts_i)
                for (cplx b : pts_j)
                    if (dist_mod_ipi(a - b) < delta_min)
                        throw ParameterError("inhomogeneities " + std::to_string(i + 1) + " and " +
                                             std::to_string(j + 1) + " are not separated");
        }
    }
}

std::vector<cplx> generate_xi(int N, cplx eta, std::uint64_t seed, double re_lo, double re_hi,
                              double im_lo, double im_hi, double min_sep, int max_tries) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ure(re_lo, re_hi), uim(im_lo, im_hi);
    for (int t = 0; t < max_tries; ++t) {
        std::vector<cplx> xi(N);
        for (auto& x : xi) {
            const double r = ure(rng);
            x = {r, uim(rng)};
        }
        ModelParams p;
        p.N = N;
        p.eta = eta;
        p.xi = xi;
        p.delta_min = min_sep;
        try {
            p.validate();
            return xi;
        } catch (const ParameterError&) {
        }
    }
    throw ParameterError("could not generate separated inhomogeneities in " +
                         std::to_string(max_tries) + " tries");
}

HalfPeriodTrigPoly::HalfPeriodTrigPoly(std::vector<cplx> roots, bool wrap) : roots_(std::move(roots)) {
    if (wrap)
        for (auto& q : roots_) q = wrap_strip(q);
}

cplx HalfPeriodTrigPoly::operator()(cplx l) const {
    cplx v = 1.0;
    for (cplx q : roots_) v *= std::sinh(0.5 * (l - q));
    return v;
}

cplx HalfPeriodTrigPoly::log_derivative(cplx l) const {
    cplx s = 0.0;
    for (cplx q : roots_) s += 0.5 / std::tanh(0.5 * (l - q));
    return s;
}

HalfPeriodTrigPoly HalfPeriodTrigPoly::shifted_ipi() const {
    std::vector<cplx> r = roots_;
    for (auto& q : r) q += I * kPi;
    return HalfPeriodTrigPoly(r);
}

cplx eval_half_poly(const HalfPeriodTrigPoly& f, cplx l) { return f(l); }

cplx fn_a(const ModelParams& p, cplx l) {
    cplx v = 1.0;
    for (cplx x : p.xi) v *= std::sinh(l - x + p.eta);
    return v;
}

cplx fn_d(const ModelParams& p, cplx l) {
    cplx v = 1.0;
    for (cplx x : p.xi) v *= std::sinh(l - x);
    return v;
}

ModelFns eval_model_fns(const ModelParams& p, cplx l) { return {fn_a(p, l), fn_d(p, l)}; }

cplx f_tilde(const HalfPeriodTrigPoly& P, const HalfPeriodTrigPoly& Q, const ModelParams& p, cplx u) {
    const cplx den1 = P(u + I * kPi), den2 = Q(u - p.eta);
    check_den(den1, "P(u+i pi)");
    check_den(den2, "Q(u-eta)");
    return P(u - p.eta + I * kPi) / den1 * Q(u) / den2;
}

cplx frak_a(const HalfPeriodTrigPoly& Q, const ModelParams& p, cplx u) {
    const cplx au = fn_a(p, u), qm = Q(u - p.eta);
    check_den(au, "a(u)");
    check_den(qm, "Q(u-eta)");
    return fn_d(p, u) / au * Q(u + p.eta) / qm;
}

Ratios eval_ratios(const HalfPeriodTrigPoly& P, const HalfPeriodTrigPoly& Q, const ModelParams& p,
                   cplx u) {
    const cplx den = P(u - p.eta) * Q(u - p.eta);
    check_den(den, "(PQ)(u-eta)");
    return {P(u) * Q(u) / den, f_tilde(P, Q, p, u), frak_a(Q, p, u)};
}

std::vector<cplx> validation_grid(const ModelParams& p, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ure(-1.2, 1.2), uim(-1.0, 1.0);
    std::vector<cplx> pts;
    int guard = 0;
    while (static_cast<int>(pts.size()) < count && guard++ < 100000) {
        const double r = ure(rng);
        const cplx z{r, uim(rng)};
        bool ok = true;
        for (cplx x : p.xi)
            if (dist_mod_ipi(z - x) < p.delta_min || dist_mod_ipi(z - x + p.eta) < p.delta_min) ok = false;
        for (cplx w : pts)
            if (std::abs(z - w) < p.delta_min) ok = false;
        if (ok) pts.push_back(z);
    }
    return pts;
}

double pq_prop_residual(const HalfPeriodTrigPoly& X, const ModelParams& p) {
    double worst = 0;
    for (cplx x : p.xi) {
        const cplx r1 = X(x - p.eta) / X(x);
        const cplx r2 = X(x - p.eta + I * kPi) / X(x + I * kPi);
        worst = std::max(worst, std::abs(r1 + r2) / std::max({std::abs(r1), std::abs(r2), 1e-300}));
    }
    return worst;
}

double cond_pq_residual(const HalfPeriodTrigPoly& P, const HalfPeriodTrigPoly& Q, const ModelParams& p) {
    double worst = 0;
    for (cplx x : p.xi) {
        const cplx r1 = P(x - p.eta) * Q(x - p.eta) / (P(x) * Q(x));
        const cplx r2 = P(x - p.eta + I * kPi) * Q(x - p.eta + I * kPi) / (P(x + I * kPi) * Q(x + I * kPi));
        worst = std::max(worst, rel_err(r1, r2));
    }
    return worst;
}

QStructure q_structure_residuals(const HalfPeriodTrigPoly& Q, const ModelParams& p,
                                 std::uint64_t grid_seed) {
    QStructure s;
    s.qhat = Q.shifted_ipi();
    const auto grid = validation_grid(p, 4 * p.N + 5, grid_seed);
    const cplx norm = std::pow(0.5 * I, p.N);
    double best = 1e300;
    for (int sign : {+1, -1}) {
        double worst = 0;
        for (cplx l : grid) {
            const cplx lhs = 0.5 * (Q(l) * s.qhat(l - p.eta) + s.qhat(l) * Q(l - p.eta));
            const cplx rhs = static_cast<double>(sign) * norm * fn_d(p, l);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300}));
        }
        if (worst < best) {
            best = worst;
            s.wronskian_sign = sign;
        }
    }
    s.wronskian_residual = best;
    cplx sum = 0.0;
    for (cplx q : Q.roots()) sum += q;
    for (cplx x : p.xi) sum -= x - 0.5 * p.eta;
    const double kf = std::round(sum.imag() / kPi);
    s.sum_rule_k = static_cast<long>(kf);
    s.sum_rule_defect = std::abs(sum - I * (kPi * kf));
    s.pq_prop_residual = pq_prop_residual(Q, p);
    return s;
}

}  // namespace sovxxz
