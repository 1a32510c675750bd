#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "riskconv/distortion.hpp"
#include "riskconv/distribution.hpp"

namespace riskconv::testutil {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Random curve from the parametric families, bounded away from the edges.
inline DistortionCurve random_curve(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (pick(rng)) {
        case 0: return DistortionCurve::power(0.2 + 4.0 * u(rng));
        case 1: return DistortionCurve::dual_power(0.2 + 4.0 * u(rng));
        case 2: return DistortionCurve::var_indicator(0.05 + 0.9 * u(rng));
        case 3: return DistortionCurve::es_cap(0.05 + 0.9 * u(rng));
        default: return DistortionCurve::identity();
    }
}

/// Random strictly convex curve in H.
inline DistortionCurve random_convex_curve(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < 0.5) return DistortionCurve::power(1.0 + 5.0 * u(rng) + 1e-3);
    return DistortionCurve::dual_power(0.1 + 0.89 * u(rng));
}

/// Random discrete law with nonnegative atoms.
inline Distribution random_discrete(std::mt19937& rng, int max_atoms = 6) {
    std::uniform_int_distribution<int> n_atoms(2, max_atoms);
    std::uniform_real_distribution<double> val(0.0, 5.0);
    std::uniform_real_distribution<double> mass(0.1, 1.0);
    const int m = n_atoms(rng);
    std::vector<std::pair<double, double>> atoms;
    double total = 0.0;
    for (int k = 0; k < m; ++k) {
        atoms.emplace_back(val(rng) + 0.01 * k, mass(rng));
        total += atoms.back().second;
    }
    for (auto& [v, p] : atoms) p /= total;
    return Distribution::discrete(std::move(atoms));
}

/// Law of p * X for a discrete X (atoms scale).
inline Distribution scaled_discrete(const Distribution& x, double p) {
    std::vector<std::pair<double, double>> atoms;
    for (const auto& [v, q] : x.atoms()) atoms.emplace_back(p * v, q);
    return Distribution::discrete(std::move(atoms));
}

/// Law of X * 1_A for an independent event A with P(A) = p.
inline Distribution indep_piece(const Distribution& x, double p) {
    std::vector<std::pair<double, double>> atoms;
    for (const auto& [v, q] : x.atoms()) atoms.emplace_back(v, p * q);
    atoms.emplace_back(0.0, 1.0 - p);
    return Distribution::discrete(std::move(atoms));
}

}  // namespace riskconv::testutil
