#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "riskconv/allocation.hpp"
#include "riskconv/convolution.hpp"
#include "riskconv/distortion.hpp"
#include "riskconv/distribution.hpp"

namespace riskconv {

enum class ShareRegime { all_concave_with_min, all_convex, var_family, es_family, generic_bound };

/// "Agent j takes the whole position" allocation.
struct SingleAgent {
    std::size_t index = 0;
};

using ShareAllocation = std::variant<SingleAgent, Composition, JackpotAllocation>;

struct ShareResult {
    double value = 0.0;
    ShareRegime regime = ShareRegime::generic_bound;
    std::optional<ShareAllocation> allocation;
    DistortionCurve curve = DistortionCurve::identity();  // representative curve
    // Filled in the generic_bound regime: certified bracket; no exact claim.
    std::optional<double> lower_bound;
    std::optional<double> upper_bound;
};

/// Comonotonic value: always rho of the pointwise-min curve; the allocation
/// is "agent j takes all" when some curve attains the min everywhere.
ShareResult comonotonic_infconv(const std::vector<DistortionCurve>& hs, const Distribution& d);

/// Counter-monotonic value by regime dispatch: exact for all-convex groups
/// on a signed cone (jackpot/scapegoat allocation), quantile families, and
/// dually-subadditive attained minima; otherwise a certified bracket.
ShareResult countermonotonic_infconv(const std::vector<DistortionCurve>& hs,
                                     const Distribution& d);

/// Unconstrained value by the same dispatch (concave groups collapse to the
/// comonotonic value, convex groups to the counter-monotonic one).
ShareResult unconstrained_infconv(const std::vector<DistortionCurve>& hs,
                                  const Distribution& d);

/// Witness that the unconstrained/counter-monotonic value is unbounded
/// below on unrestricted domains for convex non-identity curves: the
/// n-atom equal-probability allocation X_i = n m 1_{A_i} - m of the
/// constant 0 with total risk n(theta-1)m, theta = n * max_i h_i(1/n) < 1.
std::pair<DiscreteAllocation, double> divergence_certificate(
    const std::vector<DistortionCurve>& hs, double m);

/// Recomputed total risk sum_i rho_{h_i}(piece_i) for a winner-takes-all
/// allocation of a nonnegative law (or its mirror on a nonpositive law);
/// exact sums for discrete laws, quadrature with tail handling otherwise.
double allocation_total_risk(const std::vector<DistortionCurve>& hs, const JackpotAllocation& a,
                             const Distribution& d);

}  // namespace riskconv
