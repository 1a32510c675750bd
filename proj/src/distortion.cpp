#include "riskconv/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "riskconv/numerics.hpp"

namespace riskconv {

namespace {

constexpr double kShapeTol = 1e-9;
// A single-step jump larger than this on a 1001-point grid is treated as a
// discontinuity by the grid check.
constexpr double kJumpTol = 0.05;

void check_domain(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("DistortionCurve: t outside [0,1]");
}

struct GridVerdict {
    bool increasing, convex, concave, continuous, normalized;
};

GridVerdict grid_shape(const DistortionCurve& h, int n) {
    GridVerdict v{true, true, true, true, false};
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) y[k] = h(static_cast<double>(k) / (n - 1));
    for (int k = 0; k + 1 < n; ++k) {
        const double d = y[k + 1] - y[k];
        if (d < -kShapeTol) v.increasing = false;
        if (std::abs(d) > kJumpTol) v.continuous = false;
    }
    for (int k = 1; k + 1 < n; ++k) {
        const double d2 = y[k + 1] - 2.0 * y[k] + y[k - 1];
        if (d2 < -kShapeTol) v.convex = false;
        if (d2 > kShapeTol) v.concave = false;
    }
    v.normalized = std::abs(y.front()) <= kShapeTol && std::abs(y.back() - 1.0) <= kShapeTol;
    return v;
}

double eval_pwl(const std::vector<std::pair<double, double>>& pts, double t) {
    if (t <= pts.front().first) return pts.front().second;
    if (t >= pts.back().first) return pts.back().second;
    auto it = std::upper_bound(pts.begin(), pts.end(), t,
                               [](double x, const auto& p) { return x < p.first; });
    const auto& [t1, v1] = *it;
    const auto& [t0, v0] = *(it - 1);
    const double w = (t - t0) / (t1 - t0);
    double y = v0 + w * (v1 - v0);
    // Values clamp to the [h(0), h(1)] range.
    const double lo = std::min(pts.front().second, pts.back().second);
    const double hi = std::max(pts.front().second, pts.back().second);
    return std::clamp(y, lo, hi);
}

}  // namespace

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw std::invalid_argument("GridFunction: need at least 2 samples");
    monotone_ = true;
    for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
        if (values_[k + 1] < values_[k] - 1e-12) {
            monotone_ = false;
            break;
        }
    }
}

double GridFunction::operator()(double t) const {
    check_domain(t);
    const double n1 = static_cast<double>(values_.size() - 1);
    double idx = t * n1;
    double k = std::floor(idx);
    // Snap to the sample when t is (numerically) a grid point.
    if (std::abs(idx - std::round(idx)) < 1e-9) {
        return values_[static_cast<std::size_t>(std::round(idx))];
    }
    const auto i = static_cast<std::size_t>(k);
    const double frac = idx - k;
    return values_[i] + frac * (values_[i + 1] - values_[i]);
}

void DistortionCurve::finalize() {
    total_mass_ = (*this)(1.0);
    const double at0 = (*this)(0.0);
    if (std::abs(at0) > 1e-9) throw std::invalid_argument("DistortionCurve: h(0) must be 0");
}

DistortionCurve DistortionCurve::power(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power: alpha must be > 0");
    DistortionCurve h;
    h.family_ = CurveFamily::power;
    h.param_ = alpha;
    h.flags_ = {true, alpha >= 1.0, alpha <= 1.0, true, true, false};
    h.finalize();
    return h;
}

DistortionCurve DistortionCurve::dual_power(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("dual_power: beta must be > 0");
    DistortionCurve h;
    h.family_ = CurveFamily::dual_power;
    h.param_ = beta;
    h.flags_ = {true, beta <= 1.0, beta >= 1.0, true, true, false};
    h.finalize();
    return h;
}

DistortionCurve DistortionCurve::piecewise_linear(std::vector<std::pair<double, double>> pts) {
    if (pts.size() < 2) throw std::invalid_argument("piecewise_linear: need at least 2 points");
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        if (!(pts[k + 1].first > pts[k].first))
            throw std::invalid_argument("piecewise_linear: t must be strictly increasing");
    }
    if (std::abs(pts.front().first) > 1e-12 || std::abs(pts.back().first - 1.0) > 1e-12)
        throw std::invalid_argument("piecewise_linear: breakpoints must span [0,1]");
    pts.front().first = 0.0;
    pts.back().first = 1.0;
    if (std::abs(pts.front().second) > 1e-9)
        throw std::invalid_argument("piecewise_linear: h(0) must be 0");
    pts.front().second = 0.0;

    DistortionCurve h;
    h.family_ = CurveFamily::piecewise_linear;
    h.pwl_ = std::move(pts);

    bool inc = true, cvx = true, ccv = true;
    double prev_slope = 0.0;
    for (std::size_t k = 0; k + 1 < h.pwl_.size(); ++k) {
        const double slope = (h.pwl_[k + 1].second - h.pwl_[k].second) /
                             (h.pwl_[k + 1].first - h.pwl_[k].first);
        if (slope < -kShapeTol) inc = false;
        if (k > 0) {
            if (slope < prev_slope - kShapeTol) cvx = false;
            if (slope > prev_slope + kShapeTol) ccv = false;
        }
        prev_slope = slope;
    }
    const bool norm = std::abs(h.pwl_.back().second - 1.0) <= kShapeTol;
    h.flags_ = {inc, cvx, ccv, true, norm, false};
    h.finalize();
    return h;
}

DistortionCurve DistortionCurve::var_indicator(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("var_indicator: alpha must be in [0,1]");
    DistortionCurve h;
    h.family_ = CurveFamily::var_indicator;
    h.param_ = alpha;
    h.flags_ = {true, false, false, false, alpha < 1.0, false};
    h.finalize();
    return h;
}

DistortionCurve DistortionCurve::es_cap(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("es_cap: alpha must be in (0,1)");
    DistortionCurve h;
    h.family_ = CurveFamily::es_cap;
    h.param_ = alpha;
    h.flags_ = {true, false, true, true, true, false};
    h.finalize();
    return h;
}

DistortionCurve DistortionCurve::identity() {
    DistortionCurve h;
    h.family_ = CurveFamily::identity;
    h.flags_ = {true, true, true, true, true, false};
    h.finalize();
    return h;
}

DistortionCurve DistortionCurve::sampled(GridFunction g) {
    DistortionCurve h;
    h.family_ = CurveFamily::sampled;
    h.samples_ = g.values();
    if (std::abs(h.samples_.front()) > 1e-9)
        throw std::invalid_argument("sampled: h(0) must be 0");
    h.samples_.front() = 0.0;

    const auto& y = h.samples_;
    bool inc = true, cvx = true, ccv = true, norm;
    for (std::size_t k = 0; k + 1 < y.size(); ++k)
        if (y[k + 1] < y[k] - kShapeTol) inc = false;
    // Second differences assume a uniform grid.
    for (std::size_t k = 1; k + 1 < y.size(); ++k) {
        const double d2 = y[k + 1] - 2.0 * y[k] + y[k - 1];
        if (d2 < -kShapeTol) cvx = false;
        if (d2 > kShapeTol) ccv = false;
    }
    norm = std::abs(y.back() - 1.0) <= kShapeTol;
    h.flags_ = {inc, cvx, ccv, true, norm, false};
    h.finalize();
    return h;
}

double DistortionCurve::operator()(double t) const {
    check_domain(t);
    switch (family_) {
        case CurveFamily::power:
            return std::pow(t, param_);
        case CurveFamily::dual_power:
            return 1.0 - std::pow(1.0 - t, param_);
        case CurveFamily::piecewise_linear:
            return eval_pwl(pwl_, t);
        case CurveFamily::var_indicator:
            return t > param_ ? 1.0 : 0.0;
        case CurveFamily::es_cap:
            return std::min(t / param_, 1.0);
        case CurveFamily::identity:
            return t;
        case CurveFamily::sampled: {
            const double n1 = static_cast<double>(samples_.size() - 1);
            const double idx = t * n1;
            if (std::abs(idx - std::round(idx)) < 1e-9)
                return samples_[static_cast<std::size_t>(std::round(idx))];
            const auto i = static_cast<std::size_t>(std::floor(idx));
            const double frac = idx - std::floor(idx);
            return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
        }
    }
    return 0.0;
}

std::vector<double> DistortionCurve::interior_breakpoints() const {
    switch (family_) {
        case CurveFamily::var_indicator:
        case CurveFamily::es_cap:
            return (param_ > 0.0 && param_ < 1.0) ? std::vector<double>{param_}
                                                  : std::vector<double>{};
        case CurveFamily::piecewise_linear: {
            std::vector<double> out;
            for (std::size_t k = 1; k + 1 < pwl_.size(); ++k) out.push_back(pwl_[k].first);
            return out;
        }
        default:
            return {};
    }
}

std::optional<std::vector<std::pair<double, double>>> DistortionCurve::as_piecewise_linear() const {
    switch (family_) {
        case CurveFamily::piecewise_linear:
            return pwl_;
        case CurveFamily::identity:
            return std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.0, 1.0}};
        case CurveFamily::es_cap:
            return std::vector<std::pair<double, double>>{{0.0, 0.0}, {param_, 1.0}, {1.0, 1.0}};
        case CurveFamily::sampled: {
            std::vector<std::pair<double, double>> pts;
            const double n1 = static_cast<double>(samples_.size() - 1);
            for (std::size_t k = 0; k < samples_.size(); ++k)
                pts.emplace_back(static_cast<double>(k) / n1, samples_[k]);
            return pts;
        }
        default:
            return std::nullopt;
    }
}

std::optional<double> DistortionCurve::derivative(double t) const {
    switch (family_) {
        case CurveFamily::power:
            return param_ * std::pow(t, param_ - 1.0);
        case CurveFamily::dual_power:
            return param_ * std::pow(1.0 - t, param_ - 1.0);
        case CurveFamily::identity:
            return 1.0;
        default:
            return std::nullopt;
    }
}

bool DistortionCurve::strictly_convex_smooth() const {
    return (family_ == CurveFamily::power && param_ > 1.0) ||
           (family_ == CurveFamily::dual_power && param_ < 1.0);
}

bool DistortionCurve::strictly_concave_smooth() const {
    return (family_ == CurveFamily::power && param_ < 1.0) ||
           (family_ == CurveFamily::dual_power && param_ > 1.0);
}

double DistortionCurve::inverse_derivative(double y) const {
    // Exponents can be extreme for parameters near 1; work in logs and let
    // the final clamp absorb under/overflow.
    if (family_ == CurveFamily::power) {
        // h'(t) = a t^(a-1); increasing for a>1, decreasing for a<1.
        if (y <= 0.0) return param_ > 1.0 ? 0.0 : 1.0;
        const double e = std::log(y / param_) / (param_ - 1.0);
        if (e >= 0.0) return 1.0;
        if (e < -745.0) return 0.0;
        return std::exp(e);
    }
    if (family_ == CurveFamily::dual_power) {
        // h'(t) = b (1-t)^(b-1); increasing for b<1, decreasing for b>1.
        if (y <= 0.0) return param_ < 1.0 ? 0.0 : 1.0;
        const double e = std::log(y / param_) / (param_ - 1.0);
        double u;
        if (e > 700.0) u = std::numeric_limits<double>::infinity();
        else if (e < -745.0) u = 0.0;
        else u = std::exp(e);
        return std::clamp(1.0 - u, 0.0, 1.0);
    }
    // Generic fallback: bisection on the derivative over [0,1].
    auto d = [this](double t) { return *derivative(t); };
    const bool increasing = strictly_convex_smooth();
    const double d0 = d(1e-12), d1 = d(1.0 - 1e-12);
    if (increasing) {
        if (y <= d0) return 0.0;
        if (y >= d1) return 1.0;
    } else {
        if (y >= d0) return 0.0;
        if (y <= d1) return 1.0;
    }
    return bisect_root([&](double t) { return d(t) - y; }, 1e-12, 1.0 - 1e-12, 1e-12);
}

DistortionCurve dual(const DistortionCurve& h) {
    switch (h.family_) {
        case CurveFamily::power:
            return DistortionCurve::dual_power(h.param_);
        case CurveFamily::dual_power:
            return DistortionCurve::power(h.param_);
        case CurveFamily::identity:
            return DistortionCurve::identity();
        case CurveFamily::var_indicator:
            return DistortionCurve::var_indicator(1.0 - h.param_);
        case CurveFamily::es_cap: {
            // dual of min(t/a, 1) is the hinge ((t-(1-a))/a) v 0.
            return DistortionCurve::piecewise_linear(
                {{0.0, 0.0}, {1.0 - h.param_, 0.0}, {1.0, 1.0}});
        }
        case CurveFamily::piecewise_linear: {
            std::vector<std::pair<double, double>> pts(h.pwl_.rbegin(), h.pwl_.rend());
            for (auto& [t, v] : pts) {
                t = 1.0 - t;
                v = h.total_mass_ - v;
            }
            return DistortionCurve::piecewise_linear(std::move(pts));
        }
        case CurveFamily::sampled: {
            std::vector<double> vals(h.samples_.rbegin(), h.samples_.rend());
            for (auto& v : vals) v = h.total_mass_ - v;
            return DistortionCurve::sampled(GridFunction(std::move(vals)));
        }
    }
    throw std::logic_error("dual: unknown family");
}

ShapeReport classify(const DistortionCurve& h, int grid_n) {
    const GridVerdict g = grid_shape(h, grid_n);
    ShapeReport r = h.flags();
    r.grid_conflict = (g.increasing != r.increasing) || (g.convex != r.convex) ||
                      (g.concave != r.concave) || (g.continuous != r.continuous) ||
                      (g.normalized != r.normalized);
    return r;
}

bool is_dually_subadditive(const DistortionCurve& h, int grid_n) {
    if (!h.in_h_class())
        throw std::invalid_argument("is_dually_subadditive: curve must be normalized increasing");
    const DistortionCurve hd = dual(h);
    std::vector<double> hv(static_cast<std::size_t>(grid_n) + 1);
    std::vector<double> dv(static_cast<std::size_t>(grid_n) + 1);
    for (int k = 0; k <= grid_n; ++k) {
        const double t = static_cast<double>(k) / grid_n;
        hv[k] = h(t);
        dv[k] = hd(t);
    }
    for (int i = 0; i <= grid_n; ++i) {
        for (int j = i; i + j <= grid_n; ++j) {
            if (hv[i + j] > hv[i] + hv[j] + kShapeTol) return false;
            if (dv[i + j] < dv[i] + dv[j] - kShapeTol) return false;
        }
    }
    return true;
}

DistortionCurve bernstein(const DistortionCurve& h, int k, int out_n) {
    if (k < 1) throw std::invalid_argument("bernstein: k must be >= 1");
    if (!h.is_continuous())
        throw std::invalid_argument("bernstein: curve must be continuous");
    std::vector<double> coeff(static_cast<std::size_t>(k) + 1);
    for (int r = 0; r <= k; ++r) coeff[r] = h(static_cast<double>(r) / k);

    // de Casteljau evaluation of the Bezier form; stable for k up to a few
    // hundred.
    auto eval = [&](double x) {
        std::vector<double> b = coeff;
        for (int lvl = k; lvl >= 1; --lvl)
            for (int r = 0; r < lvl; ++r) b[r] = (1.0 - x) * b[r] + x * b[r + 1];
        return b[0];
    };

    std::vector<double> vals(static_cast<std::size_t>(out_n));
    for (int j = 0; j < out_n; ++j) vals[j] = eval(static_cast<double>(j) / (out_n - 1));
    vals.front() = 0.0;
    vals.back() = h(1.0);
    return DistortionCurve::sampled(GridFunction(std::move(vals)));
}

DistortionCurve combine(const std::vector<DistortionCurve>& hs, CombineMode mode, int grid_n) {
    if (hs.empty()) throw std::invalid_argument("combine: empty curve list");
    std::vector<double> vals(static_cast<std::size_t>(grid_n));
    for (int j = 0; j < grid_n; ++j) {
        const double t = static_cast<double>(j) / (grid_n - 1);
        double v = hs.front()(t);
        for (std::size_t i = 1; i < hs.size(); ++i) {
            const double y = hs[i](t);
            v = mode == CombineMode::pointwise_min ? std::min(v, y) : std::max(v, y);
        }
        vals[j] = v;
    }
    return DistortionCurve::sampled(GridFunction(std::move(vals)));
}

std::optional<std::size_t> attained_envelope(const std::vector<DistortionCurve>& hs,
                                             CombineMode mode, int grid_n) {
    if (hs.empty()) return std::nullopt;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        bool ok = true;
        for (int j = 0; j < grid_n && ok; ++j) {
            const double t = static_cast<double>(j) / (grid_n - 1);
            const double v = hs[i](t);
            for (std::size_t m = 0; m < hs.size(); ++m) {
                const double y = hs[m](t);
                const bool viol = mode == CombineMode::pointwise_min ? (y < v - 1e-9)
                                                                     : (y > v + 1e-9);
                if (viol) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return i;
    }
    return std::nullopt;
}

}  // namespace riskconv
