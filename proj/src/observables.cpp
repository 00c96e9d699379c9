#include "sovxxz/observables.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sovxxz/errors.hpp"

namespace sovxxz {

namespace {

cplx coth(cplx x) { return 1.0 / std::tanh(x); }

bool near_removable(cplx a, cplx b) { return std::abs(std::sinh(a - b)) < kRemovableRadius; }

// Matrix m(j,k) = f(u, k) at u = rows[j]; removable points are replaced by a contour mean in u.
template <class F, class Near>
CMatrix limit_matrix(const std::vector<cplx>& rows, int cols, F f, Near is_near) {
    const int R = static_cast<int>(rows.size());
    CMatrix m(R, cols);
    for (int j = 0; j < R; ++j)
        for (int k = 0; k < cols; ++k) {
            auto g = [&](cplx u) { return f(u, k); };
            m(j, k) = is_near(rows[j], k) ? contour_mean(g, rows[j]) : g(rows[j]);
        }
    return m;
}

cplx f_pq(const Poly& P, const Poly& Q, const ModelParams& p, cplx u) {
    const cplx den = P(u - p.eta) * Q(u - p.eta);
    if (std::abs(den) < 1e-300) throw SingularError("(PQ)(u - eta) vanishes");
    return P(u) * Q(u) / den;
}

void require_size(const ModelParams& p, const Poly& X, const char* name) {
    if (X.degree() != p.N) throw DimensionError(std::string(name) + " must have N roots");
}

cplx prod_tau(const TauFunction& t, const ModelParams& p, int upto) {
    cplx v = 1.0;
    for (int k = 0; k < upto; ++k) v *= t(p.xi[k]);
    return v;
}

cplx sum_of(const std::vector<cplx>& v) {
    cplx s = 0.0;
    for (cplx x : v) s += x;
    return s;
}

cplx tau_hat(const ModelParams& p, const TauFunction& t, cplx l) { return std::exp(l) * t(l) / fn_d(p, l); }

// prod_{i,j} sinh(z_i - xi_j) sinh(xi_j - p_i) / (prod_j tauQ(xi_j) prod_{i<j} sinh(z_j - z_i) sinh(p_i - p_j)).
cplx tau_prefactor(const ModelParams& p, const TauFunction& tauQ, const std::vector<cplx>& pr,
                   const std::vector<cplx>& z) {
    const int N = p.N;
    cplx num = 1.0, den = 1.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) num *= std::sinh(z[i] - p.xi[j]) * std::sinh(p.xi[j] - pr[i]);
    for (int j = 0; j < N; ++j) den *= tauQ(p.xi[j]);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) den *= std::sinh(z[j] - z[i]) * std::sinh(pr[i] - pr[j]);
    return num / den;
}

void check_z(const ModelParams& p, const std::vector<cplx>& z) {
    if (static_cast<int>(z.size()) != p.N) throw DimensionError("z must have N entries");
    for (int i = 0; i < p.N; ++i) {
        for (int j = i + 1; j < p.N; ++j)
            if (std::abs(std::sinh(z[i] - z[j])) < 1e-8) throw ParameterError("z entries must be distinct");
        for (cplx x : p.xi)
            if (std::abs(std::sinh(z[i] - x)) < 1e-8) throw ParameterError("z entry on an inhomogeneity");
    }
}

void check_tau_q(const ModelParams& p, const TauFunction& tauQ) {
    for (int j = 0; j < p.N; ++j)
        if (std::abs(tauQ(p.xi[j])) < 1e-12)
            throw PreconditionError("tau_Q vanishes at xi_" + std::to_string(j + 1));
}

void check_eps(const EigenRecord& a, const EigenRecord& b, int eps) {
    if (a.eps != eps || b.eps != eps)
        throw PreconditionError("form factors need both records built with the requested sign");
}

cplx slavnov_entry(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha, cplx u, cplx pk) {
    return coth(0.5 * (pk - u - p.eta)) + alpha * frak_a(Q, p, pk) * coth(0.5 * (pk - u)) -
           2.0 * alpha * fn_d(p, pk) / fn_a(p, u) * Q(u + p.eta) * P(u + I * kPi) /
               (Q(pk - p.eta) * P(pk + I * kPi)) / std::sinh(pk - u);
}

// Column replacing p_l by mu in the B-element and D-element determinants.
CVector mu_column(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha, cplx mu) {
    const std::vector<cplx>& qr = Q.roots();
    const cplx ipi = I * kPi;
    const cplx ratio = Q(mu - p.eta + ipi) * P(mu) / (Q(mu - p.eta) * P(mu + ipi));
    const cplx aq = frak_a(Q, p, mu + ipi);
    CVector c(p.N);
    for (int j = 0; j < p.N; ++j)
        c(j) = slavnov_entry(p, P, Q, alpha, qr[j], mu) -
               ratio * (coth(0.5 * (mu - qr[j] - p.eta + ipi)) + alpha * aq * coth(0.5 * (mu - qr[j] + ipi)));
    return c;
}

}  // namespace

cplx sp_direct(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha) {
    const int N = p.N;
    CMatrix num(N, N), den(N, N);
    for (int i = 0; i < N; ++i) {
        const cplx x = p.xi[i], w = alpha * f_pq(P, Q, p, x);
        for (int j = 1; j <= N; ++j) {
            const double e = static_cast<double>(2 * j - N - 1);
            den(i, j - 1) = std::exp(e * x);
            num(i, j - 1) = den(i, j - 1) + w * std::exp(e * (x - p.eta));
        }
    }
    const cplx dd = det_lu(den);
    if (std::abs(dd) < 1e-300) throw SingularError("sp_direct: singular Vandermonde denominator");
    return det_lu(num) / dd;
}

cplx sp_direct_sum(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha) {
    const SovIndex count = SovIndex(1) << p.N;
    std::vector<cplx> w(p.N);
    for (int n = 0; n < p.N; ++n) w[n] = alpha * f_pq(P, Q, p, p.xi[n]);
    const cplx v0 = vandermonde(p.xi);
    cplx s = 0.0;
    for (SovIndex h = 0; h < count; ++h) {
        cplx t = 1.0;
        for (int n = 1; n <= p.N; ++n)
            if (!h_bit(h, n)) t *= w[n - 1];
        s += t * sov_measure_vdm(p, (count - 1) ^ h) / v0;
    }
    return s;
}

cplx sp_izergin(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha) {
    require_size(p, P, "P");
    const int N = p.N;
    const auto& pr = P.roots();
    CMatrix num(N, N), den(N, N);
    for (int i = 0; i < N; ++i) {
        const cplx x = p.xi[i], w = alpha * f_tilde(P, Q, p, x);
        for (int k = 0; k < N; ++k) {
            const cplx s0 = std::sinh(x - pr[k]), s1 = std::sinh(x - pr[k] - p.eta);
            if (std::abs(s0) < 1e-12 || std::abs(s1) < 1e-12)
                throw ParameterError("sp_izergin: root of P collides with an inhomogeneity");
            den(i, k) = 1.0 / s0;
            num(i, k) = den(i, k) + w / s1;
        }
    }
    return det_lu(num) / det_lu(den);
}

CMatrix slavnov_matrix(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha) {
    const auto& pr = P.roots();
    return limit_matrix(
        Q.roots(), p.N, [&](cplx u, int k) { return slavnov_entry(p, P, Q, alpha, u, pr[k]); },
        [&](cplx u, int k) { return near_removable(pr[k], u); });
}

CMatrix coth_matrix(const ModelParams& p, const Poly& P, const Poly& Q) {
    const auto &pr = P.roots(), &qr = Q.roots();
    CMatrix m(p.N, p.N);
    for (int j = 0; j < p.N; ++j)
        for (int k = 0; k < p.N; ++k) {
            const cplx s = std::sinh(0.5 * (pr[k] - qr[j] - p.eta));
            if (std::abs(s) < 1e-12) throw SingularError("coth matrix: p_k - q_j - eta on a pole");
            m(j, k) = coth(0.5 * (pr[k] - qr[j] - p.eta));
        }
    return m;
}

cplx coth_det_closed_form(const ModelParams& p, const Poly& P, const Poly& Q) {
    const int N = p.N;
    const auto &pr = P.roots(), &qr = Q.roots();
    cplx num = std::cosh(0.5 * (sum_of(pr) - sum_of(qr) - static_cast<double>(N) * p.eta));
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) num *= std::sinh(0.5 * (pr[i] - pr[j])) * std::sinh(0.5 * (qr[j] - qr[i]));
    cplx den = 1.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) den *= std::sinh(0.5 * (pr[i] - qr[j] - p.eta));
    return num / den;
}

cplx sp_slavnov(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha, std::optional<cplx> gamma,
                double cond_tol) {
    require_size(p, P, "P");
    require_size(p, Q, "Q");
    const double cond = cond_pq_residual(P, Q, p);
    if (!(cond < cond_tol))
        throw PreconditionError("sp_slavnov: product condition violated (residual " + std::to_string(cond) + ")");
    if (!gamma) return det_lu(slavnov_matrix(p, P, Q, alpha)) / det_lu(coth_matrix(p, P, Q));
    const cplx g = *gamma;
    auto sg = [g](cplx u) { return std::sinh(0.5 * (u + g)) / (std::sinh(0.5 * u) * std::sinh(0.5 * g)); };
    const auto &pr = P.roots(), &qr = Q.roots();
    const CMatrix num = limit_matrix(
        qr, p.N,
        [&](cplx u, int k) {
            const cplx pk = pr[k];
            return sg(pk - u - p.eta) + alpha * frak_a(Q, p, pk) * sg(pk - u) -
                   2.0 * alpha * fn_d(p, pk) / fn_a(p, u) * Q(u + p.eta) * P(u + I * kPi) /
                       (Q(pk - p.eta) * P(pk + I * kPi)) / std::sinh(pk - u);
        },
        [&](cplx u, int k) { return near_removable(pr[k], u); });
    CMatrix den(p.N, p.N);
    for (int j = 0; j < p.N; ++j)
        for (int k = 0; k < p.N; ++k) den(j, k) = sg(pr[k] - qr[j] - p.eta);
    return det_lu(num) / det_lu(den);
}

CMatrix product_matrix(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha, cplx beta) {
    const auto& pr = P.roots();
    const cplx eh = std::exp(-0.5 * p.eta), ipi = I * kPi;
    return limit_matrix(
        Q.roots(), p.N,
        [&](cplx u, int k) {
            const cplx pk = pr[k];
            const cplx l1 = alpha * eh / std::sinh(0.5 * (pk - u - p.eta)) - 1.0 / std::sinh(0.5 * (pk - u));
            const cplx l2 = beta * eh * frak_a(Q, p, pk) *
                            (alpha * eh / std::sinh(0.5 * (pk - u)) - 1.0 / std::sinh(0.5 * (pk - u + p.eta)));
            const cplx l3 = 2.0 * fn_d(p, pk) / fn_d(p, u) * Q(u - p.eta) * P(u + ipi) /
                            (Q(pk - p.eta) * P(pk + ipi)) *
                            (1.0 - alpha * beta * std::exp(-p.eta) * frak_a(Q, p, u)) * std::exp(0.5 * (pk - u)) /
                            std::sinh(pk - u);
            return l1 + l2 + l3;
        },
        [&](cplx u, int k) { return near_removable(pr[k], u); });
}

ProductCheck sp_product_check(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha, cplx beta) {
    const int N = p.N;
    const auto &pr = P.roots(), &qr = Q.roots();
    ProductCheck c;
    c.lhs = sp_slavnov(p, P, Q, alpha) * sp_slavnov(p, P, Q, beta);
    CMatrix cauchy(N, N);
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) cauchy(i, k) = 1.0 / std::sinh(0.5 * (pr[k] - qr[i] - p.eta));
    cplx pref = (N % 2 == 0 ? 1.0 : -1.0) * std::exp(sum_of(p.xi) - sum_of(pr));
    for (cplx x : p.xi) pref *= Q(x) / Q(x - p.eta);
    c.rhs = pref * det_lu(product_matrix(p, P, Q, alpha, beta)) / det_lu(cauchy);
    c.deviation = std::abs(c.lhs - c.rhs) / std::max(std::abs(c.lhs), 1e-300);
    c.ratio_to_printed = c.lhs / (c.rhs / std::pow(2.0, N * (N - 1)));
    return c;
}

LastLineCheck product_last_line(const ModelParams& p, const Poly& P, const Poly& Q, cplx alpha) {
    const cplx beta = std::exp(p.eta) / alpha, ipi = I * kPi;
    const auto &pr = P.roots(), &qr = Q.roots();
    const CMatrix full = product_matrix(p, P, Q, alpha, beta);
    LastLineCheck r;
    for (int j = 0; j < p.N; ++j)
        for (int k = 0; k < p.N; ++k) {
            const cplx pk = pr[k], u = qr[j];
            if (near_removable(pk, u)) {
                ++r.excluded;
                continue;
            }
            r.scale = std::max(r.scale, std::abs(full(j, k)));
            const cplx l3 = 2.0 * fn_d(p, pk) / fn_d(p, u) * Q(u - p.eta) * P(u + ipi) /
                            (Q(pk - p.eta) * P(pk + ipi)) *
                            (1.0 - alpha * beta * std::exp(-p.eta) * frak_a(Q, p, u)) * std::exp(0.5 * (pk - u)) /
                            std::sinh(pk - u);
            r.max_entry = std::max(r.max_entry, std::abs(l3));
        }
    return r;
}

CMatrix tau_matrix(const ModelParams& p, const TauFunction& tauP, const TauFunction& tauQ,
                   const std::vector<cplx>& pr, const std::vector<cplx>& z, cplx alpha) {
    std::vector<cplx> thq(p.N), thp(p.N);
    for (int k = 0; k < p.N; ++k) {
        thq[k] = tau_hat(p, tauQ, pr[k]);
        thp[k] = tau_hat(p, tauP, pr[k] + p.eta);
    }
    return limit_matrix(
        z, p.N,
        [&](cplx zz, int k) {
            return (tau_hat(p, tauQ, zz) - thq[k]) / std::sinh(zz - pr[k]) -
                   alpha * (tau_hat(p, tauP, zz) - thp[k]) / std::sinh(zz - pr[k] - p.eta);
        },
        [&](cplx zz, int k) { return near_removable(zz, pr[k]) || near_removable(zz, pr[k] + p.eta); });
}

TauForms sp_tau(const ModelParams& p, const EigenRecord& recP, const EigenRecord& recQ, cplx kappa, cplx kappa2,
                std::optional<std::vector<cplx>> z) {
    const int N = p.N;
    check_tau_q(p, recQ.tau);
    const cplx alpha = static_cast<double>(recP.eps * recQ.eps) * kappa2 / kappa;
    const auto& pr = recP.Q.roots();
    const std::vector<cplx> zz = z ? *z : recQ.Q.roots();
    check_z(p, zz);
    TauForms out;
    CMatrix num(N, N), den(N, N);
    for (int i = 0; i < N; ++i) {
        const cplx x = p.xi[i], tq = recQ.tau(x), tp = recP.tau(x);
        for (int k = 0; k < N; ++k) {
            den(i, k) = tq / std::sinh(x - pr[k]);
            num(i, k) = den(i, k) - alpha * tp / std::sinh(x - pr[k] - p.eta);
        }
    }
    out.izergin = det_lu(num) / det_lu(den);
    out.slavnov = tau_prefactor(p, recQ.tau, pr, zz) * det_lu(tau_matrix(p, recP.tau, recQ.tau, pr, zz, alpha)) /
                  std::exp(sum_of(p.xi));
    return out;
}

SameQ sp_same_q(const ModelParams& p, const Poly& Q, cplx alpha) {
    require_size(p, Q, "Q");
    const int N = p.N;
    const auto& q = Q.roots();
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (std::abs(std::sinh(q[i] - q[j])) < 1e-10) throw SingularError("sp_same_q: coincident roots");
    CMatrix num(N, N), den(N, N), comp(N, N);
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            den(i, k) = 1.0 / std::sinh(p.xi[i] - q[k]);
            num(i, k) = den(i, k) - alpha / std::sinh(p.xi[i] - q[k] - p.eta);
        }
    for (int k = 0; k < N; ++k) {
        cplx w = fn_d(p, q[k]) / fn_a(p, q[k]);
        for (int l = 0; l < N; ++l) {
            w *= std::sinh(q[k] - q[l] + p.eta);
            if (l != k) w /= std::sinh(q[k] - q[l]);
        }
        for (int j = 0; j < N; ++j)
            comp(j, k) = (j == k ? 1.0 : 0.0) - w * alpha / std::sinh(q[k] - q[j] + p.eta);
    }
    return {det_lu(num) / det_lu(den), det_lu(comp)};
}

cplx ff_sigma_z(const ModelParams& p, const EigenRecord& recP, const EigenRecord& recQ, cplx kappa, int eps,
                int n, FFForm form, std::optional<std::vector<cplx>> z) {
    (void)kappa;
    check_eps(recP, recQ, eps);
    if (n < 1 || n > p.N) throw DimensionError("site index out of range");
    check_tau_q(p, recQ.tau);
    const int N = p.N;
    const Poly &P = recP.Q, &Q = recQ.Q;
    const auto &pr = P.roots(), &qr = Q.roots();
    const cplx xn = p.xi[n - 1], ipi = I * kPi;
    const cplx ratio = prod_tau(recP.tau, p, n) / prod_tau(recQ.tau, p, n);
    if (form == FFForm::Roots) {
        const CMatrix S1 = slavnov_matrix(p, P, Q, 1.0);
        CMatrix Pz(N, N);
        const cplx r1 = Q(xn - p.eta) / P(xn - p.eta), r2 = Q(xn - p.eta + ipi) / P(xn - p.eta + ipi);
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                Pz(j, k) = P(pr[k] - p.eta) / Q(pr[k] - p.eta) *
                           (r1 * coth(0.5 * (xn - qr[j] - p.eta)) + r2 * coth(0.5 * (xn + ipi - qr[j] - p.eta)));
        return -ratio * det_lu(S1 - Pz) / det_lu(coth_matrix(p, P, Q));
    }
    const std::vector<cplx> zz = z ? *z : qr;
    check_z(p, zz);
    const CMatrix St = tau_matrix(p, recP.tau, recQ.tau, pr, zz, 1.0);
    CMatrix Pzt(N, N);
    const cplx c = std::exp(xn) * recQ.tau(xn) / (P(xn - p.eta) * P(xn + ipi));
    for (int i = 0; i < N; ++i)
        for (int l = 0; l < N; ++l)
            Pzt(i, l) = c / (fn_d(p, pr[l]) * std::sinh(zz[i] - xn)) * P(pr[l] - p.eta) * P(pr[l] + ipi);
    return -tau_prefactor(p, recQ.tau, pr, zz) / std::exp(sum_of(p.xi)) * ratio * det_lu(St + Pzt);
}

cplx ff_sigma_pm(const ModelParams& p, const EigenRecord& recP, const EigenRecord& recQ, cplx kappa, int eps,
                 int n, FFForm form, std::optional<std::vector<cplx>> z) {
    check_eps(recP, recQ, eps);
    if (n < 1 || n > p.N) throw DimensionError("site index out of range");
    check_tau_q(p, recQ.tau);
    const int N = p.N;
    const Poly &P = recP.Q, &Q = recQ.Q;
    const auto &pr = P.roots(), &qr = Q.roots();
    const cplx xn = p.xi[n - 1], ipi = I * kPi, ae = std::exp(-p.eta);
    const cplx ratio = prod_tau(recP.tau, p, n - 1) / prod_tau(recQ.tau, p, n);
    const cplx ek = static_cast<double>(eps) * kappa;
    if (form == FFForm::Roots) {
        const CMatrix Se = slavnov_matrix(p, P, Q, ae);
        CMatrix Pm(N, N);
        const cplx r1 = Q(xn - p.eta) / P(xn), r2 = Q(xn - p.eta + ipi) / P(xn + ipi);
        const cplx norm = std::pow(-2.0 * I, N);
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                Pm(j, k) = std::exp(pr[k] - xn) * fn_a(p, xn) * fn_d(p, pr[k]) /
                           (norm * Q(pr[k] - p.eta) * P(pr[k] + ipi)) *
                           (r1 * coth(0.5 * (xn - qr[j] - p.eta)) - r2 * coth(0.5 * (xn - qr[j] - p.eta + ipi)));
        const cplx pref = ek * std::exp(sum_of(p.xi) - sum_of(pr)) * ratio;
        return pref * (det_lu(Se - Pm) - det_lu(Se)) / det_lu(coth_matrix(p, P, Q));
    }
    const std::vector<cplx> zz = z ? *z : qr;
    check_z(p, zz);
    const CMatrix St = tau_matrix(p, recP.tau, recQ.tau, pr, zz, ae);
    cplx sp = 1.0;
    for (cplx x : pr) sp *= std::sinh(xn - x);
    CMatrix Pmt(N, N);
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k)
            Pmt(i, k) = std::exp(pr[k]) * fn_a(p, xn) * recQ.tau(xn) / (sp * std::sinh(zz[i] - xn));
    const cplx pref = ek * std::exp(-sum_of(pr)) * tau_prefactor(p, recQ.tau, pr, zz) * ratio;
    return pref * (det_lu(St + Pmt) - det_lu(St));
}

cplx b_element(const ModelParams& p, const Poly& P, const Poly& Q, cplx kappa, cplx kappa2, cplx mu) {
    const int N = p.N;
    const cplx alpha = kappa2 / kappa, ipi = I * kPi;
    const auto& pr = P.roots();
    const CMatrix S = slavnov_matrix(p, P, Q, alpha);
    const CVector col = mu_column(p, P, Q, alpha, mu);
    cplx tot = (P(mu - p.eta) / P(mu) - P(mu - p.eta + ipi) / P(mu + ipi)) * det_lu(S);
    for (int l = 0; l < N; ++l) {
        CMatrix Sl = S;
        Sl.col(l) = col;
        tot -= P(pr[l] - p.eta) / P(mu) * Q(mu - p.eta) / Q(pr[l] - p.eta) * det_lu(Sl);
    }
    return -kappa * fn_a(p, mu) / (2.0 * det_lu(coth_matrix(p, P, Q))) * tot;
}

cplx d_element(const ModelParams& p, const Poly& P, const Poly& Q, cplx kappa, cplx mu) {
    (void)kappa;
    const int N = p.N;
    const cplx alpha = std::exp(-p.eta), ipi = I * kPi;
    const auto& pr = P.roots();
    CMatrix M = CMatrix::Zero(N + 1, N + 1);
    M.topLeftCorner(N, N) = slavnov_matrix(p, P, Q, alpha);
    for (int k = 0; k < N; ++k)
        M(N, k) = std::exp(pr[k]) * fn_d(p, pr[k]) / (Q(pr[k] - p.eta) * P(pr[k] + ipi));
    cplx sp = 1.0;
    for (cplx x : pr) sp *= std::sinh(mu - x);
    const cplx fac = std::exp(-mu) * fn_a(p, mu) * Q(mu - p.eta) * P(mu + ipi) / sp;
    M.block(0, N, N, 1) = fac * mu_column(p, P, Q, alpha, mu);
    M(N, N) = fac * std::exp(mu) * fn_d(p, mu) / (Q(mu - p.eta) * P(mu + ipi));
    return std::exp(sum_of(p.xi) - sum_of(pr)) * det_lu(M) / det_lu(coth_matrix(p, P, Q));
}

DensePair dense_pair(const SovBasis& basis, const Poly& P, cplx kappa, int eps, const Poly& Q, cplx kappa2,
                     int eps2) {
    return {separate_state(basis, P, kappa, eps, Side::Bra, true).embedded,
            separate_state(basis, Q, kappa2, eps2, Side::Ket, true).embedded};
}

cplx brute_operator(const DensePair& st, const CMatrix& op) { return pair(st.bra, op * st.ket); }

cplx brute_local(const DensePair& st, LocalOp op, int n, int N) {
    const CMatrix o = op == LocalOp::Z ? pauli_z() : op == LocalOp::Plus ? sigma_plus() : sigma_minus();
    return brute_operator(st, embed_site(o, n, N));
}

cplx af_operator(const std::vector<cplx>& x, cplx eta, const std::function<cplx(cplx)>& f) {
    const int L = static_cast<int>(x.size());
    CMatrix m(L, L);
    for (int i = 0; i < L; ++i) {
        const cplx fx = f(x[i]);
        for (int j = 1; j <= L; ++j) {
            const double e = static_cast<double>(2 * j - L - 1), s = std::pow(2.0, j - 1);
            m(i, j - 1) = (std::exp(e * x[i]) - fx * std::exp(e * (x[i] - eta))) / s;
        }
    }
    return det_lu(m) / vandermonde(x);
}

cplx if_operator(const std::vector<cplx>& x, const std::vector<cplx>& z, cplx eta,
                 const std::function<cplx(cplx)>& f) {
    const int L = static_cast<int>(x.size());
    CMatrix num(L, L), den(L, L);
    for (int i = 0; i < L; ++i) {
        const cplx fx = f(x[i]);
        for (int k = 0; k < L; ++k) {
            den(i, k) = 1.0 / std::sinh(x[i] - z[k]);
            num(i, k) = den(i, k) - fx / std::sinh(x[i] - z[k] - eta);
        }
    }
    return det_lu(num) / det_lu(den);
}

IdentityBench identity_bench(const ModelParams& p, const std::vector<EigenRecord>& recs, std::uint64_t seed) {
    IdentityBench b;
    const cplx eta = p.eta, ipi = I * kPi;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ure(-1.0, 1.0), uim(-0.5, 0.5);
    const int L = 4;
    std::vector<cplx> x(L), z(L);
    for (auto& v : x) {
        const double r = ure(rng);
        v = {r, uim(rng)};
    }
    for (auto& v : z) {
        const double r = ure(rng);
        v = {r, uim(rng)};
    }
    const cplx c0{0.3, 0.2}, s0{0.0, 0.4};
    auto f = [&](cplx u) { return c0 * std::sinh(u - 0.1) / std::sinh(u + s0); };
    auto fE = [&](cplx u) {
        cplx e = f(u);
        for (cplx zk : z) e *= std::sinh(u - zk - eta) / std::sinh(u - zk);
        return e;
    };
    b.af_if = rel_err(af_operator(x, eta, f), if_operator(x, z, eta, fE));
    auto zero = [](cplx) { return cplx(0.0); };
    b.af_if_zero = std::max(std::abs(af_operator(x, eta, zero) - 1.0), std::abs(if_operator(x, z, eta, zero) - 1.0));

    // Extension limit: f_infinity = c0 e^{-0.1 - s0}.
    const cplx finf = c0 * std::exp(-0.1 - s0);
    std::vector<cplx> xs(x.begin(), x.end() - 1), xl = xs;
    xl.push_back(30.0);
    auto ef = [&](cplx u) { return std::exp(eta) * f(u); };
    b.ext_limit = rel_err(af_operator(xl, eta, f),
                          (1.0 - finf * std::exp(-static_cast<double>(L - 1) * eta)) * af_operator(xs, eta, ef));

    const int N = p.N;
    const cplx alpha{1.3, 0.2};
    for (const auto& rp : recs)
        for (const auto& rq : recs) {
            const Poly &P = rp.Q, &Q = rq.Q;
            const auto &pr = P.roots(), &qr = Q.roots();
            const cplx ref = sp_izergin(p, P, Q, alpha);
            b.izergin_slavnov = std::max(b.izergin_slavnov, rel_err(sp_slavnov(p, P, Q, alpha), ref));
            // Intermediate double-period forms.
            CMatrix M1(N, N), Mh(N, N), D0(N, N);
            const cplx eh = std::exp(-0.5 * eta);
            for (int i = 0; i < N; ++i) {
                const cplx xi = p.xi[i];
                const cplx ft = f_tilde(P, Q, p, xi), ftp = f_tilde(P, Q, p, xi + ipi);
                const cplx w = P(xi) * Q(xi + ipi) / (P(xi + ipi) * Q(xi));
                for (int k = 0; k < N; ++k) {
                    D0(i, k) = 1.0 / std::sinh(xi - pr[k]);
                    M1(i, k) = 1.0 / std::sinh(0.5 * (xi - pr[k])) - I / std::sinh(0.5 * (xi - pr[k] + ipi)) +
                               alpha * eh *
                                   (ft / std::sinh(0.5 * (xi - pr[k] - eta)) -
                                    I * ftp / std::sinh(0.5 * (xi - pr[k] - eta + ipi)));
                    Mh(i, k) = 1.0 / std::sinh(0.5 * (xi - qr[k])) - alpha * eh / std::sinh(0.5 * (xi - qr[k] - eta)) -
                               I * w *
                                   (1.0 / std::sinh(0.5 * (xi - qr[k] + ipi)) -
                                    alpha * eh / std::sinh(0.5 * (xi - qr[k] - eta + ipi)));
                }
            }
            const cplx d0 = det_lu(D0);
            const cplx base = std::exp(0.5 * (sum_of(p.xi) - sum_of(pr))) / std::pow(2.0, N);
            cplx pre = 1.0;
            for (cplx xi : p.xi) pre *= Q(xi) / P(xi);
            for (int i = 0; i < N; ++i)
                for (int j = i + 1; j < N; ++j)
                    pre *= std::sinh(0.5 * (pr[j] - pr[i])) / std::sinh(0.5 * (qr[j] - qr[i]));
            b.ize2 = std::max(b.ize2, rel_err(base * det_lu(M1) / d0, ref));
            b.ize3 = std::max(b.ize3, rel_err(base * pre * det_lu(Mh) / d0, ref));
            // X M^{(beta)} residue closed form, only where every 1/sinh(q_j - p_k) is regular.
            bool regular = true;
            for (cplx a : pr)
                for (cplx c : qr)
                    if (near_removable(a, c)) regular = false;
            if (!regular) {
                ++b.pairs_used;
                continue;
            }
            for (cplx beta : {alpha, cplx(0.0), cplx(-0.7, 0.4)}) {
                CMatrix X(N, N), M(N, N), R(N, N);
                for (int a = 0; a < N; ++a)
                    for (int c = 0; c < N; ++c) {
                        const cplx xb = p.xi[c];
                        cplx pl = 1.0;
                        for (int l = 0; l < N; ++l)
                            if (l != c) pl *= std::sinh(xb - p.xi[l]);
                        X(a, c) = (Q(xb - eta) * P(xb + ipi) * coth(0.5 * (xb - qr[a] - eta)) -
                                   Q(xb - eta + ipi) * P(xb) * coth(0.5 * (xb - qr[a] - eta + ipi))) /
                                  pl;
                        M(a, c) = 1.0 / std::sinh(p.xi[a] - pr[c]) +
                                  beta * f_tilde(P, Q, p, p.xi[a]) / std::sinh(p.xi[a] - pr[c] - eta);
                    }
                for (int j = 0; j < N; ++j)
                    for (int k = 0; k < N; ++k) {
                        const cplx qj = qr[j], pk = pr[k];
                        R(j, k) = -2.0 * beta * Q(qj + eta) * P(qj + ipi) / (fn_a(p, qj) * std::sinh(qj - pk)) -
                                  Q(pk - eta) * P(pk + ipi) / fn_d(p, pk) * coth(0.5 * (pk - qj - eta)) -
                                  beta * Q(pk + eta) * P(pk + ipi) / fn_a(p, pk) * coth(0.5 * (pk - qj));
                    }
                b.xm_beta = std::max(b.xm_beta, (X * M - R).cwiseAbs().maxCoeff() / R.cwiseAbs().maxCoeff());
            }
            ++b.pairs_used;
        }
    return b;
}

}  // namespace sovxxz
