#pragma once

#include <functional>
#include <vector>

#include "riskconv/convolution.hpp"
#include "riskconv/distortion.hpp"
#include "riskconv/distribution.hpp"

namespace riskconv {

/// Increasing convex investment cost on [0,1]. The quadratic preset is
/// c(l) = l^2/2; custom costs supply the derivative and its inverse
/// (checked to round-trip within 1e-9 on a grid at construction).
class CostFunction {
public:
    static CostFunction quadratic();
    static CostFunction custom(std::function<double(double)> c,
                               std::function<double(double)> c_prime,
                               std::function<double(double)> c_prime_inverse);

    double cost(double lambda) const { return c_(lambda); }
    double marginal(double lambda) const { return cp_(lambda); }
    double marginal_inverse(double y) const { return cpinv_(y); }
    /// Inverse of the cost itself (bisection for custom costs); used by the
    /// optional strict-budget mode.
    double cost_inverse(double w) const;

private:
    CostFunction() = default;
    std::function<double(double)> c_, cp_, cpinv_;
    bool quadratic_ = false;
};

enum class PortfolioRegime { concave_group, convex_group };

struct PortfolioSolution {
    double lambda_star = 0.0;
    PortfolioRegime regime = PortfolioRegime::concave_group;
    DistortionCurve representative = DistortionCurve::identity();
    double rho_value = 0.0;
    double budget_bound = 0.0;
    bool clamped = false;  // lambda got clipped into [0,1]
};

/// Optimal risky proportion: lambda* = min(c'^{-1}(rho(X)), budget bound)
/// clamped to [0,1]. Concave groups use the dual of the pointwise-min
/// curve as representative; convex groups the normalized sup-convolution
/// of the duals. The budget term is c'^{-1}(W) by default; pass
/// strict_budget to use c^{-1}(W) instead (see README).
PortfolioSolution optimal_lambda(const std::vector<DistortionCurve>& hs, const Distribution& d,
                                 double wealth, const CostFunction& cost,
                                 bool strict_budget = false);

struct SweepRow {
    double alpha;
    double lambda_star;
};

using GroupBuilder = std::function<std::vector<DistortionCurve>(double)>;

/// lambda* for each alpha in order; every alpha must build a valid
/// same-shape group.
std::vector<SweepRow> comparative_sweep(const GroupBuilder& family,
                                        const std::vector<double>& alphas,
                                        const Distribution& d, double wealth,
                                        const CostFunction& cost);

/// Sign changes of f_g - f_h (normalized sup-convolutions of the duals) on
/// a grid, refined by bisection to 1e-6. Empty when one curve dominates.
std::vector<double> crossing_points(const std::vector<DistortionCurve>& hs,
                                    const std::vector<DistortionCurve>& gs, int grid_n);

/// Documented sweep families: concave pair {1-(1-x)^{2a}, 1-(1-x)^{3a}}
/// (a >= 1/2) and convex pair {1-(1-x)^{0.2a}, 1-(1-x)^{0.3a}} (a in (0, 10/3]).
std::vector<DistortionCurve> sweep_family_concave(double alpha);
std::vector<DistortionCurve> sweep_family_convex(double alpha);

}  // namespace riskconv
