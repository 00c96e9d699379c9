#pragma once

#include <map>
#include <random>

#include "sovxxz/observables.hpp"
#include "sovxxz/spectrum.hpp"

namespace fx {

using namespace sovxxz;

inline ModelParams params(int N, std::uint64_t seed = 42, cplx kappa = 1.0, cplx kappa2 = {1.3, 0.2}) {
    ModelParams p;
    p.N = N;
    p.eta = {0.6, 0.35};
    p.xi = generate_xi(N, p.eta, seed, -1, 1, -0.4, 0.4, 0.1);
    p.kappa = kappa;
    p.kappa2 = kappa2;
    p.validate();
    return p;
}

// Certified records, cached per (N, kappa).
inline const std::vector<EigenRecord>& records(int N, cplx kappa = 1.0) {
    static std::map<std::pair<int, double>, std::vector<EigenRecord>> cache;
    const auto key = std::make_pair(N, kappa.real() * 1000 + kappa.imag());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, solve_spectrum(params(N), kappa)).first;
    return it->second;
}

inline CMatrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

inline std::vector<cplx> random_points(int n, std::uint64_t seed, double scale = 0.8) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<cplx> v;
    for (int i = 0; i < n; ++i) v.push_back({u(rng), 0.5 * u(rng)});
    return v;
}

inline double tau_gap(const std::vector<cplx>& a, const std::vector<cplx>& b, double sign) {
    double num = 0, den = 0;
    for (size_t j = 0; j < a.size(); ++j) {
        num = std::max(num, std::abs(a[j] - sign * b[j]));
        den = std::max({den, std::abs(a[j]), std::abs(b[j])});
    }
    return num / den;
}

}  // namespace fx
