#include "sovxxz/sov.hpp"

#include <algorithm>
#include <cmath>

#include "sovxxz/errors.hpp"

namespace sovxxz {

std::vector<cplx> shifted_xi(const ModelParams& p, SovIndex h) {
    std::vector<cplx> x(p.N);
    for (int n = 1; n <= p.N; ++n) x[n - 1] = p.xi[n - 1] - static_cast<double>(h_bit(h, n)) * p.eta;
    return x;
}

cplx sov_measure_vdm(const ModelParams& p, SovIndex h) { return vandermonde(shifted_xi(p, h)); }

cplx d_h(const ModelParams& p, SovIndex h, cplx l) {
    cplx v = 1.0;
    for (cplx x : shifted_xi(p, h)) v *= std::sinh(l - x);
    return v;
}

namespace {

CVector reference_state(int N) {
    CVector v = CVector::Zero(Eigen::Index(1) << N);
    v(0) = 1.0;
    return v;
}

}  // namespace

CVector sov_vector(const ModelParams& p, SovIndex h, Side side) {
    CVector v = reference_state(p.N);
    if (side == Side::Ket) {
        for (int a = 1; a <= p.N; ++a) {
            if (!h_bit(h, a)) continue;
            const cplx aa = fn_a(p, p.xi[a - 1]);
            if (std::abs(aa) < 1e-14) throw SingularError("sov_vector: a(xi_a) vanishes");
            v = -(monodromy_entries(p, p.xi[a - 1]).B * v) / aa;
        }
    } else {
        v /= vandermonde(p.xi);
        for (int a = 1; a <= p.N; ++a) {
            if (!h_bit(h, a)) continue;
            const cplx dd = fn_d(p, p.xi[a - 1] - p.eta);
            if (std::abs(dd) < 1e-14) throw SingularError("sov_vector: d(xi_a - eta) vanishes");
            v = (monodromy_entries(p, p.xi[a - 1]).C.transpose() * v) / dd;
        }
    }
    return v;
}

SovBasis::SovBasis(const ModelParams& p) : p_(p) {
    const SovIndex count = SovIndex(1) << p.N;
    std::vector<CMatrix> Bx, Cx;
    for (int a = 1; a <= p.N; ++a) {
        const Monodromy m = monodromy_entries(p, p.xi[a - 1]);
        const cplx aa = fn_a(p, p.xi[a - 1]), dd = fn_d(p, p.xi[a - 1] - p.eta);
        if (std::abs(aa) < 1e-14 || std::abs(dd) < 1e-14) throw SingularError("SovBasis: singular normalization");
        Bx.push_back(-m.B / aa);
        Cx.push_back(m.C.transpose() / dd);
    }
    kets_.resize(count);
    bras_.resize(count);
    kets_[0] = reference_state(p.N);
    bras_[0] = reference_state(p.N) / vandermonde(p.xi);
    // Build each h from h with its highest set bit cleared; the B (resp. C) operators commute.
    for (SovIndex h = 1; h < count; ++h) {
        int top = 0;
        for (int n = 1; n <= p.N; ++n)
            if (h_bit(h, n)) top = n;
        const SovIndex prev = h & ~(SovIndex(1) << (top - 1));
        kets_[h] = Bx[top - 1] * kets_[prev];
        bras_[h] = Cx[top - 1] * bras_[prev];
    }
}

cplx pair(const CVector& bra, const CVector& ket) { return (bra.transpose() * ket)(0, 0); }

SovState separate_state(const SovBasis& basis, const HalfPeriodTrigPoly& P, cplx kappa, int eps, Side side,
                        bool normalized) {
    const ModelParams& p = basis.params();
    const int N = p.N;
    const double e = static_cast<double>(eps);
    SovState s{P, kappa, eps, side, normalized, {}, CVector::Zero(Eigen::Index(1) << N)};
    std::vector<cplx> ratio(N);
    if (normalized) {
        for (int n = 1; n <= N; ++n) {
            const cplx den = P(p.xi[n - 1] - p.eta);
            if (std::abs(den) < p.delta_min * 1e-6)
                throw SingularError("separate_state: P(xi_" + std::to_string(n) +
                                    " - eta) vanishes; use the unnormalized form");
            ratio[n - 1] = P(p.xi[n - 1]) / den;
        }
    }
    const cplx vxi = vandermonde(p.xi);
    s.coefficients.resize(basis.size());
    for (SovIndex h = 0; h < basis.size(); ++h) {
        cplx c = 1.0;
        if (normalized) {
            for (int n = 1; n <= N; ++n)
                if (!h_bit(h, n)) c *= (side == Side::Ket ? e * kappa : e / kappa) * ratio[n - 1];
            if (side == Side::Ket)
                c *= sov_measure_vdm(p, (basis.size() - 1) ^ h) / vxi;
            else
                c *= sov_measure_vdm(p, h);
        } else {
            for (int n = 1; n <= N; ++n) {
                const int hn = h_bit(h, n);
                const cplx x = p.xi[n - 1] - static_cast<double>(hn) * p.eta;
                if (side == Side::Bra) {
                    c *= (hn ? e * kappa : cplx(1.0)) * P(x);
                } else {
                    const cplx w = hn ? -fn_a(p, p.xi[n - 1]) / (e * kappa * fn_d(p, p.xi[n - 1] - p.eta))
                                      : cplx(1.0);
                    c *= w * P(x);
                }
            }
            c *= sov_measure_vdm(p, h);
        }
        s.coefficients[h] = c;
        s.embedded += c * (side == Side::Ket ? basis.ket(h) : basis.bra(h));
    }
    return s;
}

std::vector<cplx> separate_state_ket_alt(const ModelParams& p, const HalfPeriodTrigPoly& P, cplx kappa, int eps) {
    const SovIndex count = SovIndex(1) << p.N;
    const double e = static_cast<double>(eps);
    std::vector<cplx> c(count);
    for (SovIndex h = 0; h < count; ++h) {
        cplx v = 1.0;
        for (int n = 1; n <= p.N; ++n) {
            const int hn = h_bit(h, n);
            v *= (hn ? 1.0 / (e * kappa) : cplx(1.0)) * P(p.xi[n - 1] - static_cast<double>(hn) * p.eta);
        }
        c[h] = v * sov_measure_vdm(p, (count - 1) ^ h);
    }
    return c;
}

double ActionResiduals::max() const { return std::max({d_left, c_left, b_left, d_right, c_right, b_right}); }

ActionResiduals sov_action_residuals(const SovBasis& basis, cplx l) {
    const ModelParams& p = basis.params();
    const int N = p.N;
    const Monodromy m = monodromy_entries(p, l);
    ActionResiduals r;
    auto lagrange = [&](SovIndex h, int a) {
        const auto x = shifted_xi(p, h);
        cplx w = 1.0;
        for (int b = 1; b <= N; ++b)
            if (b != a) w *= std::sinh(l - x[b - 1]) / std::sinh(x[a - 1] - x[b - 1]);
        return w;
    };
    auto rel = [](const CVector& got, const CVector& want) {
        return (got - want).norm() / std::max(want.norm() + got.norm(), 1e-300);
    };
    for (SovIndex h = 0; h < basis.size(); ++h) {
        const cplx dh = d_h(p, h, l);
        const CVector& k = basis.ket(h);
        const CVector& b = basis.bra(h);
        r.d_right = std::max(r.d_right, rel(m.D * k, dh * k));
        r.d_left = std::max(r.d_left, rel(m.D.transpose() * b, dh * b));
        CVector cr = CVector::Zero(k.size()), br = cr, cl = cr, bl = cr;
        for (int a = 1; a <= N; ++a) {
            const SovIndex flip = h ^ (SovIndex(1) << (a - 1));
            const cplx w = lagrange(h, a);
            const cplx d1 = fn_d(p, p.xi[a - 1] - p.eta), a0 = fn_a(p, p.xi[a - 1]);
            if (h_bit(h, a)) {
                cr += w * d1 * basis.ket(flip);
                bl -= w * a0 * basis.bra(flip);
            } else {
                br -= w * a0 * basis.ket(flip);
                cl += w * d1 * basis.bra(flip);
            }
        }
        r.c_right = std::max(r.c_right, rel(m.C * k, cr));
        r.b_right = std::max(r.b_right, rel(m.B * k, br));
        r.c_left = std::max(r.c_left, rel(m.C.transpose() * b, cl));
        r.b_left = std::max(r.b_left, rel(m.B.transpose() * b, bl));
    }
    return r;
}

}  // namespace sovxxz
