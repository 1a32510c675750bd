#pragma once

#include <utility>
#include <vector>

#include "riskconv/allocation.hpp"
#include "riskconv/distortion.hpp"
#include "riskconv/distribution.hpp"

namespace riskconv {
namespace oracle {

/// Sorted levels with matching survival values; the integration backbone of
/// the level-wise verifier.
struct LevelGrid {
    std::vector<double> levels;
    std::vector<double> survival_values;
};

LevelGrid make_level_grid(const Distribution& d, int n_levels);

/// Brute-force counter-monotonic value for a nonnegative law: integrates
/// the per-level minimum min{sum h_i(p_i) : p_i >= 0, sum p_i = S(x)} found
/// by nested line search (n = 2) or coordinate descent (n > 2) over a
/// quantile-spaced level grid with a tail slope correction. Deliberately
/// independent of the convolution module's solvers.
double oracle_levelwise(const std::vector<DistortionCurve>& hs, const Distribution& d,
                        int n_levels = 2001);

/// Exhaustive simplex grid search for the power-curve probability split
/// (n = 2 or 3 only), refined once at 10x resolution around the incumbent.
std::pair<Composition, double> oracle_constant_share(const std::vector<double>& alphas,
                                                     int grid_n);

/// Convex order X <=cx Y via equal means (within 1e-9) plus dominated
/// stop-loss transforms at every atom of either law.
bool convex_order_leq(const Distribution& x, const Distribution& y);

}  // namespace oracle
}  // namespace riskconv
