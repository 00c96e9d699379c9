#include "sovxxz/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "sovxxz/errors.hpp"

namespace sovxxz {

HalfPeriodTrigPoly q_from_tau(const ModelParams& p, const TauFunction& tau, std::uint64_t seed) {
    const int N = p.N;
    const auto pts = validation_grid(p, 2 * N + 3, seed);
    // Q(l) ~ e^{-N l/2} sum_c x_c W^c, W = e^l; each row is the TQ relation at one point, rescaled.
    CMatrix M(static_cast<Eigen::Index>(pts.size()), N + 1);
    const cplx em = std::exp(-p.eta), ep = std::exp(p.eta);
    const cplx am = std::exp(0.5 * static_cast<double>(N) * p.eta), dm = std::exp(-0.5 * static_cast<double>(N) * p.eta);
    for (size_t r = 0; r < pts.size(); ++r) {
        const cplx l = pts[r], W = std::exp(l);
        const cplx t = tau(l), a = fn_a(p, l), d = fn_d(p, l);
        for (int c = 0; c <= N; ++c)
            M(r, c) = t * std::pow(W, c) + a * am * std::pow(W * em, c) - d * dm * std::pow(W * ep, c);
        M.row(r) /= M.row(r).norm();
    }
    Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(N - 1) < 10.0 * s(N))
        throw DegeneracyError("q_from_tau: TQ nullspace is not one-dimensional (singular values " +
                              std::to_string(s(N - 1)) + ", " + std::to_string(s(N)) + ")");
    const CVector x = svd.matrixV().col(N);
    if (std::abs(x(N)) < 1e-10 * x.norm())
        throw DegeneracyError("q_from_tau: degree of Q dropped; re-seed the parameters");
    MonicPoly poly;
    for (int c = 0; c < N; ++c) poly.coeffs.push_back(x(c) / x(N));
    std::vector<cplx> roots;
    for (cplx w : roots_monic(poly)) {
        if (std::abs(w) < 1e-300) throw DegeneracyError("q_from_tau: root at W = 0");
        roots.push_back(std::log(w));
    }
    HalfPeriodTrigPoly Q(roots);
    for (int n = 0; n < N; ++n) {
        const cplx x0 = p.xi[n];
        if (std::abs(Q(x0)) < 1e-12 && std::abs(Q(x0 + I * kPi)) < 1e-12)
            throw ParameterError("q_from_tau: Q vanishes at xi_" + std::to_string(n + 1) + " and xi_" +
                                 std::to_string(n + 1) + " + i pi");
    }
    return Q;
}

namespace {

struct BetheSystem {
    CVector F, scale;
    CMatrix J;
};

BetheSystem bethe_system(const ModelParams& p, const std::vector<cplx>& q, bool with_jacobian) {
    const int N = static_cast<int>(q.size());
    const HalfPeriodTrigPoly Q(q, false);
    BetheSystem s{CVector(N), CVector(N), CMatrix()};
    if (with_jacobian) s.J = CMatrix::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        const cplx x = q[j];
        const cplx a = fn_a(p, x), d = fn_d(p, x);
        const cplx qm = Q(x - p.eta), qp = Q(x + p.eta);
        const cplx t1 = a * qm, t2 = d * qp;
        s.F(j) = t1 - t2;
        s.scale(j) = std::abs(t1) + std::abs(t2);
        if (!with_jacobian) continue;
        cplx la = 0.0, ld = 0.0;
        for (cplx xi : p.xi) {
            la += 1.0 / std::tanh(x - xi + p.eta);
            ld += 1.0 / std::tanh(x - xi);
        }
        cplx sm = 0.0, sp = 0.0;
        for (int k = 0; k < N; ++k) {
            if (k == j) continue;
            const cplx cm = 0.5 / std::tanh(0.5 * (x - p.eta - q[k]));
            const cplx cp = 0.5 / std::tanh(0.5 * (x + p.eta - q[k]));
            sm += cm;
            sp += cp;
            s.J(j, k) = -t1 * cm + t2 * cp;
        }
        s.J(j, j) = t1 * (la + sm) - t2 * (ld + sp);
    }
    return s;
}

double scaled_norm(const BetheSystem& s) {
    double w = 0;
    for (Eigen::Index j = 0; j < s.F.size(); ++j)
        w = std::max(w, std::abs(s.F(j)) / std::max(s.scale(j).real(), 1e-300));
    return w;
}

}  // namespace

HalfPeriodTrigPoly refine_bethe(const ModelParams& p, const HalfPeriodTrigPoly& Q, int max_iter) {
    std::vector<cplx> q = Q.roots();
    const int N = static_cast<int>(q.size());
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (std::abs(std::sinh(0.5 * (q[i] - q[j]))) < 0.5 * p.delta_min)
                throw DegeneracyError("refine_bethe: roots " + std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) + " collide");
    const double target = 1e-12;
    BetheSystem s = bethe_system(p, q, true);
    double res = scaled_norm(s);
    for (int it = 0; it < max_iter && res >= target; ++it) {
        const CVector step = s.J.fullPivLu().solve(s.F);
        double t = 1.0;
        bool improved = false;
        for (int h = 0; h < 12; ++h, t *= 0.5) {
            std::vector<cplx> trial = q;
            for (int j = 0; j < N; ++j) trial[j] -= t * step(j);
            const BetheSystem st = bethe_system(p, trial, false);
            const double r = scaled_norm(st);
            if (r < res) {
                q = trial;
                res = r;
                improved = true;
                break;
            }
        }
        if (!improved) break;
        s = bethe_system(p, q, true);
    }
    if (res >= target)
        throw ConvergenceError("refine_bethe: no convergence, last scaled residual " + std::to_string(res), -1);
    return HalfPeriodTrigPoly(q);
}

double tq_residual(const ModelParams& p, const TauFunction& tau, const HalfPeriodTrigPoly& Q,
                   std::uint64_t seed) {
    double w = 0;
    for (cplx l : validation_grid(p, 4 * p.N + 5, seed)) {
        const cplx t1 = tau(l) * Q(l), t2 = fn_a(p, l) * Q(l - p.eta), t3 = fn_d(p, l) * Q(l + p.eta);
        w = std::max(w, std::abs(t1 + t2 - t3) / std::max(std::abs(t1) + std::abs(t2) + std::abs(t3), 1e-300));
    }
    return w;
}

double bethe_residual(const ModelParams& p, const HalfPeriodTrigPoly& Q) {
    double w = 0;
    for (cplx q : Q.roots()) w = std::max(w, std::abs(frak_a(Q, p, q) - 1.0));
    return w;
}

double discrete_residual(const ModelParams& p, const TauFunction& tau) {
    double w = 0;
    for (cplx x : p.xi) w = std::max(w, rel_err(tau(x) * tau(x - p.eta), -fn_a(p, x) * fn_d(p, x - p.eta)));
    return w;
}

TransferSamples transfer_samples(const ModelParams& p, cplx kappa, std::uint64_t seed) {
    TransferSamples s;
    s.mu = validation_grid(p, 3, seed);
    for (cplx mu : s.mu) s.T.push_back(transfer_k(p, mu, kappa));
    return s;
}

double eigenstate_residual(const SovBasis& basis, const TauFunction& tau, const HalfPeriodTrigPoly& Q,
                           cplx kappa, int eps, const TransferSamples& samples) {
    const SovState st = separate_state(basis, Q, kappa, eps, Side::Ket, true);
    const CVector& v = st.embedded;
    double w = 0;
    for (size_t k = 0; k < samples.mu.size(); ++k) {
        const cplx t = tau(samples.mu[k]);
        const CVector r = samples.T[k] * v - t * v;
        w = std::max(w, r.norm() / (v.norm() * std::max(1.0, std::abs(t))));
    }
    return w;
}

double eigenstate_residual(const SovBasis& basis, const TauFunction& tau, const HalfPeriodTrigPoly& Q,
                           cplx kappa, int eps, std::uint64_t seed) {
    return eigenstate_residual(basis, tau, Q, kappa, eps, transfer_samples(basis.params(), kappa, seed));
}

std::vector<std::string> evaluate_record(const SovBasis& basis, EigenRecord& rec, cplx kappa,
                                         const SpectrumTolerances& tol, const TransferSamples* samples) {
    const ModelParams& p = basis.params();
    rec.tq_residual = tq_residual(p, rec.tau, rec.Q);
    rec.bethe_residual = bethe_residual(p, rec.Q);
    rec.discrete_residual = discrete_residual(p, rec.tau);
    rec.eigenstate_residual = samples ? eigenstate_residual(basis, rec.tau, rec.Q, kappa, rec.eps, *samples)
                                      : eigenstate_residual(basis, rec.tau, rec.Q, kappa, rec.eps);
    const QStructure qs = q_structure_residuals(rec.Q, p);
    rec.Qhat = qs.qhat;
    rec.wronskian_residual = qs.wronskian_residual;
    rec.wronskian_sign = qs.wronskian_sign;
    rec.sum_rule_defect = qs.sum_rule_defect;
    rec.sum_rule_k = qs.sum_rule_k;
    std::vector<std::string> failed;
    if (!(rec.tq_residual < tol.tq)) failed.push_back("tq");
    if (!(rec.bethe_residual < tol.bethe)) failed.push_back("bethe");
    if (!(rec.discrete_residual < tol.discrete)) failed.push_back("discrete");
    if (!(rec.eigenstate_residual < tol.eigenstate)) failed.push_back("eigenstate");
    rec.certified = failed.empty();
    return failed;
}

EigenRecord certify(const SovBasis& basis, EigenRecord rec, cplx kappa, const SpectrumTolerances& tol) {
    const auto failed = evaluate_record(basis, rec, kappa, tol);
    if (!failed.empty()) {
        std::string msg = "certification failed:";
        for (const auto& f : failed) msg += " " + f;
        throw CertificationError(msg);
    }
    return rec;
}

std::vector<EigenRecord> solve_spectrum(const ModelParams& p, cplx kappa, std::uint64_t seed,
                                        const SpectrumTolerances& tol) {
    p.validate();
    const SovBasis basis(p);
    const TransferSamples samples = transfer_samples(p, kappa);
    std::vector<EigenRecord> out;
    for (auto& o : spectrum_oracle(p, kappa)) {
        EigenRecord rec;
        rec.tau_at_xi = o.tau.at_xi();
        rec.tau = o.tau;
        rec.vector = o.vector;
        rec.Q = refine_bethe(p, q_from_tau(p, o.tau, seed));
        evaluate_record(basis, rec, kappa, tol, &samples);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace sovxxz
