#pragma once

#include <vector>

#include "sovxxz/lattice.hpp"
#include "sovxxz/qfunction.hpp"

namespace sovxxz {

// h is a bitmask: bit (n-1) holds h_n.
using SovIndex = unsigned;

inline int h_bit(SovIndex h, int n) { return static_cast<int>((h >> (n - 1)) & 1u); }

enum class Side { Bra, Ket };

// xi_n - h_n * eta for each site.
std::vector<cplx> shifted_xi(const ModelParams& p, SovIndex h);
// V(xi_1^{(h_1)}, ..., xi_N^{(h_N)}).
cplx sov_measure_vdm(const ModelParams& p, SovIndex h);
// d_h(l) = prod_n sinh(l - xi_n^{(h_n)}).
cplx d_h(const ModelParams& p, SovIndex h, cplx l);

// ket |h> = prod_{h_a=1} (-B(xi_a)/a(xi_a)) |up...up>; bra <h| = <up...up| prod C(xi_a)/d(xi_a-eta) / V(xi).
// Bras are stored as row data in a column vector (no conjugation).
CVector sov_vector(const ModelParams& p, SovIndex h, Side side);

// All 2^N basis vectors, built once.
class SovBasis {
public:
    explicit SovBasis(const ModelParams& p);
    const CVector& ket(SovIndex h) const { return kets_[h]; }
    const CVector& bra(SovIndex h) const { return bras_[h]; }
    SovIndex size() const { return static_cast<SovIndex>(kets_.size()); }
    const ModelParams& params() const { return p_; }

private:
    ModelParams p_;
    std::vector<CVector> kets_, bras_;
};

struct SovState {
    HalfPeriodTrigPoly P;
    cplx kappa;
    int eps = 1;
    Side side = Side::Ket;
    bool normalized = true;
    std::vector<cplx> coefficients;  // indexed by SovIndex
    CVector embedded;                // spin basis; bras as row data
};

// Separate states, normalized or not. Unnormalized kets use the a/d-weighted form by default;
// separate_state_ket_alt gives the equivalent V(xi + h eta) form.
SovState separate_state(const SovBasis& basis, const HalfPeriodTrigPoly& P, cplx kappa, int eps, Side side,
                        bool normalized);
std::vector<cplx> separate_state_ket_alt(const ModelParams& p, const HalfPeriodTrigPoly& P, cplx kappa,
                                         int eps);

// Bilinear pairing <bra|ket> (no conjugation).
cplx pair(const CVector& bra, const CVector& ket);

struct ActionResiduals {
    double d_left = 0, c_left = 0, b_left = 0, d_right = 0, c_right = 0, b_right = 0;
    double max() const;
};
// Dense operator applied to basis vectors against the SoV action formulas at spectral parameter l.
ActionResiduals sov_action_residuals(const SovBasis& basis, cplx l);

}  // namespace sovxxz
