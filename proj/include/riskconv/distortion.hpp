#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace riskconv {

/// Uniformly sampled curve on [0,1] with linear interpolation between
/// samples. Evaluation at a sample point returns the stored value.
class GridFunction {
public:
    explicit GridFunction(std::vector<double> values);

    double operator()(double t) const;
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    bool monotone() const { return monotone_; }

private:
    std::vector<double> values_;
    bool monotone_;
};

enum class CurveFamily { power, dual_power, piecewise_linear, var_indicator, es_cap, identity, sampled };

struct ShapeReport {
    bool increasing = false;
    bool convex = false;
    bool concave = false;
    bool continuous = false;
    bool normalized = false;
    bool grid_conflict = false;  // grid verdict disagreed with the analytic flag
};

/// A bounded-variation distortion curve h on [0,1] with h(0) = 0.
/// Shape flags are fixed at construction; analytic families carry exact
/// flags, sampled/piecewise data is classified from the values.
class DistortionCurve {
public:
    static DistortionCurve power(double alpha);                 // t^alpha
    static DistortionCurve dual_power(double beta);             // 1-(1-t)^beta
    static DistortionCurve piecewise_linear(std::vector<std::pair<double, double>> pts);
    static DistortionCurve var_indicator(double alpha);         // 1{t > alpha}, alpha in [0,1]
    static DistortionCurve es_cap(double alpha);                // min(t/alpha, 1), alpha in (0,1)
    static DistortionCurve identity();
    static DistortionCurve sampled(GridFunction g);

    double operator()(double t) const;  // domain error outside [0,1]

    CurveFamily family() const { return family_; }
    double param() const { return param_; }  // alpha/beta for parametric families
    double total_mass() const { return total_mass_; }

    bool is_increasing() const { return flags_.increasing; }
    bool is_convex() const { return flags_.convex; }
    bool is_concave() const { return flags_.concave; }
    bool is_continuous() const { return flags_.continuous; }
    bool is_normalized() const { return flags_.normalized; }
    /// Member of H: increasing with h(0)=0, h(1)=1.
    bool in_h_class() const { return flags_.increasing && flags_.normalized; }

    const ShapeReport& flags() const { return flags_; }

    /// Interior kink/jump locations in t, used as quadrature split hints.
    std::vector<double> interior_breakpoints() const;

    /// Breakpoints when the curve is exactly piecewise linear
    /// (piecewise_linear, es_cap, identity, sampled); nullopt otherwise.
    std::optional<std::vector<std::pair<double, double>>> as_piecewise_linear() const;

    /// h'(t) for smooth parametric families (power, dual_power, identity).
    std::optional<double> derivative(double t) const;
    /// Strictly convex and differentiable with h' invertible on (0,1):
    /// power alpha>1 or dual_power beta<1.
    bool strictly_convex_smooth() const;
    /// Strictly concave and differentiable: power alpha<1 or dual_power beta>1.
    bool strictly_concave_smooth() const;
    /// Inverse of h' clamped to [0,1]; only valid for the strictly
    /// convex/concave smooth families above.
    double inverse_derivative(double y) const;

private:
    DistortionCurve() = default;

    CurveFamily family_ = CurveFamily::identity;
    double param_ = 0.0;
    std::vector<std::pair<double, double>> pwl_;  // piecewise_linear breakpoints
    std::vector<double> samples_;                 // sampled values
    double total_mass_ = 1.0;
    ShapeReport flags_;

    void finalize();
    friend DistortionCurve dual(const DistortionCurve&);
};

/// Dual transform h~(t) = h(1) - h(1-t); an involution that swaps the
/// convexity and concavity flags.
DistortionCurve dual(const DistortionCurve& h);

/// Grid-based shape verdicts merged with the analytic family flags
/// (analytic wins on conflict; the conflict is reported).
ShapeReport classify(const DistortionCurve& h, int grid_n = 1001);

/// h subadditive and dual superadditive on a grid of pairs; requires h in H.
bool is_dually_subadditive(const DistortionCurve& h, int grid_n = 200);

/// Bernstein polynomial of order k, sampled on `out_n` points.
/// Requires a continuous curve.
DistortionCurve bernstein(const DistortionCurve& h, int k, int out_n = 1001);

enum class CombineMode { pointwise_min, pointwise_max };

/// Pointwise min/max of the curves sampled on a grid.
DistortionCurve combine(const std::vector<DistortionCurve>& hs, CombineMode mode,
                        int grid_n = 1001);

/// Index of a curve equal to the pointwise min/max everywhere on the grid
/// (within 1e-9), if one exists.
std::optional<std::size_t> attained_envelope(const std::vector<DistortionCurve>& hs,
                                             CombineMode mode, int grid_n = 1001);

}  // namespace riskconv
