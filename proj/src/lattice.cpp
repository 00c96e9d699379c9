#include "sovxxz/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "sovxxz/errors.hpp"

namespace sovxxz {

namespace {

// 2x2 site blocks r_ab of the R-matrix for auxiliary indices a, b.
void r_blocks(cplx l, cplx eta, CMatrix r[2][2]) {
    const cplx s = std::sinh(l), se = std::sinh(l + eta), sh = std::sinh(eta);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) r[a][b] = CMatrix::Zero(2, 2);
    r[0][0](0, 0) = se;
    r[0][0](1, 1) = s;
    r[1][1](0, 0) = s;
    r[1][1](1, 1) = se;
    r[0][1](1, 0) = sh;
    r[1][0](0, 1) = sh;
}

void check_size(int N) {
    if (N < 1 || N > kMaxSites)
        throw SizeError("chain length " + std::to_string(N) + " outside [1, " +
                        std::to_string(kMaxSites) + "]");
}

}  // namespace

CMatrix r_matrix(cplx lambda, cplx eta) {
    CMatrix r[2][2];
    r_blocks(lambda, eta, r);
    CMatrix R = CMatrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) R.block(2 * a, 2 * b, 2, 2) = r[a][b];
    return R;
}

CMatrix embed_site(const CMatrix& op2, int n, int N) {
    if (n < 1 || n > N) throw DimensionError("site index out of range");
    const Eigen::Index left = Eigen::Index(1) << (n - 1), right = Eigen::Index(1) << (N - n);
    const Eigen::Index dim = left * 2 * right;
    CMatrix out = CMatrix::Zero(dim, dim);
    for (Eigen::Index l = 0; l < left; ++l)
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) {
                if (op2(s, t) == 0.0) continue;
                for (Eigen::Index r = 0; r < right; ++r)
                    out((l * 2 + s) * right + r, (l * 2 + t) * right + r) = op2(s, t);
            }
    return out;
}

CMatrix elementary(int i, int j) {
    CMatrix e = CMatrix::Zero(2, 2);
    e(i - 1, j - 1) = 1.0;
    return e;
}
CMatrix pauli_z() { return elementary(1, 1) - elementary(2, 2); }
CMatrix sigma_plus() { return elementary(1, 2); }
CMatrix sigma_minus() { return elementary(2, 1); }

Monodromy monodromy_entries(const ModelParams& p, cplx lambda) {
    check_size(p.N);
    const int N = p.N;
    // M accumulates R_{0N} ... R_{0n}; each step right-multiplies by the site-n blocks.
    CMatrix M[2][2];
    bool first = true;
    for (int n = N; n >= 1; --n) {
        CMatrix r[2][2];
        r_blocks(lambda - p.xi[n - 1], p.eta, r);
        CMatrix R[2][2];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) R[a][b] = embed_site(r[a][b], n, N);
        if (first) {
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) M[a][b] = R[a][b];
            first = false;
        } else {
            CMatrix next[2][2];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) next[a][b] = M[a][0] * R[0][b] + M[a][1] * R[1][b];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) M[a][b] = std::move(next[a][b]);
        }
    }
    return {M[0][0], M[0][1], M[1][0], M[1][1]};
}

CMatrix transfer_k(const ModelParams& p, cplx lambda, cplx kappa) {
    if (kappa == 0.0) throw ParameterError("transfer_k: zero twist");
    const Monodromy m = monodromy_entries(p, lambda);
    return m.B / kappa + kappa * m.C;
}

CMatrix twisted_monodromy_entry(const Monodromy& m, cplx kappa, int row, int col) {
    if (row == 1 && col == 1) return kappa * m.C;
    if (row == 1 && col == 2) return kappa * m.D;
    if (row == 2 && col == 1) return m.A / kappa;
    if (row == 2 && col == 2) return m.B / kappa;
    throw DimensionError("twisted_monodromy_entry: indices must be in {1,2}");
}

TauFunction::TauFunction(std::vector<cplx> xi, std::vector<cplx> values)
    : xi_(std::move(xi)), values_(std::move(values)) {}

cplx TauFunction::operator()(cplx l) const {
    cplx s = 0.0;
    const size_t N = xi_.size();
    for (size_t j = 0; j < N; ++j) {
        cplx t = values_[j];
        for (size_t k = 0; k < N; ++k)
            if (k != j) t *= std::sinh(l - xi_[k]) / std::sinh(xi_[j] - xi_[k]);
        s += t;
    }
    return s;
}

TauFunction TauFunction::negated() const {
    std::vector<cplx> v = values_;
    for (auto& x : v) x = -x;
    return TauFunction(xi_, v);
}

std::vector<OracleEigen> spectrum_oracle(const ModelParams& p, cplx kappa, double gap_factor) {
    check_size(p.N);
    const int N = p.N;
    std::vector<CMatrix> Ts;
    for (int j = 0; j < N; ++j) Ts.push_back(transfer_k(p, p.xi[j], kappa));
    const auto pairs = eig_dense(Ts[0], 1 << kMaxSites);
    double radius = 0;
    for (const auto& e : pairs) radius = std::max(radius, std::abs(e.value));
    for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = a + 1; b < pairs.size(); ++b)
            if (std::abs(pairs[a].value - pairs[b].value) < gap_factor * radius)
                throw DegeneracyError("transfer matrix spectrum is not simple; re-seed the parameters");
    // Extra test point away from the inhomogeneities.
    const cplx mu{0.137, 0.291};
    const CMatrix Tmu = transfer_k(p, mu, kappa);
    std::vector<OracleEigen> out;
    for (const auto& e : pairs) {
        std::vector<cplx> vals(N);
        const cplx nrm = e.vector.squaredNorm();
        for (int j = 0; j < N; ++j) vals[j] = e.vector.dot(Ts[j] * e.vector) / nrm;
        OracleEigen o{e.value, e.vector, TauFunction(p.xi, vals), 0};
        const cplx rq = e.vector.dot(Tmu * e.vector) / nrm;
        o.interp_check = rel_err(o.tau(mu), rq);
        out.push_back(std::move(o));
    }
    std::sort(out.begin(), out.end(),
              [](const OracleEigen& x, const OracleEigen& y) { return lex_less(x.value_xi1, y.value_xi1); });
    return out;
}

DressedOperator dress_local_operator(const ModelParams& p, int n, int i, int j, DressingForm form,
                                     double tol) {
    check_size(p.N);
    if (n < 1 || n > p.N) throw DimensionError("site index out of range");
    if (i < 1 || i > 2 || j < 1 || j > 2) throw DimensionError("indices must be in {1,2}");
    const Eigen::Index dim = Eigen::Index(1) << p.N;
    auto inverse_of = [](const CMatrix& m) {
        Eigen::PartialPivLU<CMatrix> lu(m);
        if (std::abs(lu.determinant()) == 0.0) throw SingularError("transfer matrix factor is singular");
        return CMatrix(lu.inverse());
    };
    CMatrix left = CMatrix::Identity(dim, dim), right = CMatrix::Identity(dim, dim);
    CMatrix middle;
    if (form == DressingForm::Direct) {
        for (int k = 1; k < n; ++k) left = left * transfer_k(p, p.xi[k - 1]);
        for (int k = 1; k <= n; ++k) right = right * inverse_of(transfer_k(p, p.xi[k - 1]));
        middle = twisted_monodromy_entry(monodromy_entries(p, p.xi[n - 1]), p.kappa, j, i);
    } else {
        for (int k = 1; k <= n; ++k) left = left * transfer_k(p, p.xi[k - 1]);
        for (int k = 1; k < n; ++k) right = right * inverse_of(transfer_k(p, p.xi[k - 1]));
        if (form == DressingForm::Inverse) {
            const Monodromy m = monodromy_entries(p, p.xi[n - 1]);
            CMatrix big(2 * dim, 2 * dim);
            for (int r = 1; r <= 2; ++r)
                for (int c = 1; c <= 2; ++c)
                    big.block((r - 1) * dim, (c - 1) * dim, dim, dim) = twisted_monodromy_entry(m, p.kappa, r, c);
            const CMatrix inv = inverse_of(big);
            middle = inv.block((j - 1) * dim, (i - 1) * dim, dim, dim);
        } else {
            const Monodromy m = monodromy_entries(p, p.xi[n - 1] - p.eta);
            const cplx qd = fn_a(p, p.xi[n - 1]) * fn_d(p, p.xi[n - 1] - p.eta);
            const double sgn = ((i + j) % 2 == 0) ? -1.0 : 1.0;
            middle = sgn * twisted_monodromy_entry(m, p.kappa, 3 - i, 3 - j) / qd;
        }
    }
    DressedOperator out;
    out.op = left * middle * right;
    out.residual = (out.op - embed_site(elementary(i, j), n, p.N)).norm();
    if (out.residual > tol)
        throw SingularError("inverse problem reconstruction failed for E_" + std::to_string(n) + "^{" +
                            std::to_string(i) + std::to_string(j) + "}: residual " +
                            std::to_string(out.residual));
    return out;
}

namespace {

// Operator on aux (x) aux' (x) quantum space from 2x2 blocks acting in one auxiliary factor.
CMatrix aux_embed(const CMatrix (&blk)[2][2], bool second) {
    const Eigen::Index d = blk[0][0].rows();
    CMatrix out = CMatrix::Zero(4 * d, 4 * d);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                const int r = second ? 2 * c + a : 2 * a + c;
                const int k = second ? 2 * c + b : 2 * b + c;
                out.block(r * d, k * d, d, d) = blk[a][b];
            }
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

double yang_baxter_residual(cplx lambda, cplx mu, cplx eta) {
    const CMatrix I2 = CMatrix::Identity(2, 2);
    const CMatrix R12 = kron(r_matrix(lambda - mu, eta), I2);
    const CMatrix R23 = kron(I2, r_matrix(mu, eta));
    // R13 = P23 R12 P23.
    CMatrix P23 = CMatrix::Zero(8, 8);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) P23(4 * a + 2 * c + b, 4 * a + 2 * b + c) = 1.0;
    const CMatrix R13 = P23 * kron(r_matrix(lambda, eta), I2) * P23;
    return (R12 * R13 * R23 - R23 * R13 * R12).norm();
}

double twist_commutator(cplx lambda, cplx eta, cplx kappa) {
    CMatrix K = CMatrix::Zero(2, 2);
    K(0, 1) = kappa;
    K(1, 0) = 1.0 / kappa;
    const CMatrix KK = kron(K, K), R = r_matrix(lambda, eta);
    return (R * KK - KK * R).norm();
}

double rtt_residual(const ModelParams& p, cplx lambda, cplx mu) {
    const Monodromy a = monodromy_entries(p, lambda), b = monodromy_entries(p, mu);
    const CMatrix ta[2][2] = {{a.A, a.B}, {a.C, a.D}}, tb[2][2] = {{b.A, b.B}, {b.C, b.D}};
    const CMatrix T1 = aux_embed(ta, false), T2 = aux_embed(tb, true);
    const Eigen::Index d = a.A.rows();
    const CMatrix R = kron(r_matrix(lambda - mu, p.eta), CMatrix::Identity(d, d));
    return (R * T1 * T2 - T2 * T1 * R).norm() / (R * T1 * T2).norm();
}

double qdet_residual(const ModelParams& p, cplx lambda) {
    const Monodromy m = monodromy_entries(p, lambda), s = monodromy_entries(p, lambda - p.eta);
    const cplx q = fn_a(p, lambda) * fn_d(p, lambda - p.eta);
    const CMatrix lhs = m.A * s.D - m.B * s.C;
    return (lhs - q * CMatrix::Identity(lhs.rows(), lhs.cols())).norm() / (std::abs(q) * std::sqrt(double(lhs.rows())));
}

double transfer_commutator(const ModelParams& p, cplx lambda, cplx mu) {
    const CMatrix a = transfer_k(p, lambda), b = transfer_k(p, mu);
    return (a * b - b * a).norm() / (a.norm() * b.norm());
}

double reference_state_residual(const ModelParams& p, cplx lambda) {
    const Monodromy m = monodromy_entries(p, lambda);
    const CVector up = CVector::Unit(m.C.rows(), 0);
    const double scale = m.D.norm();
    return std::max((m.C * up).norm(), (m.D * up - fn_d(p, lambda) * up).norm()) / scale;
}

}  // namespace sovxxz
