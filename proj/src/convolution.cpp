#include "riskconv/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "riskconv/numerics.hpp"

namespace riskconv {

namespace {

constexpr double kWeightTol = 1e-9;

void check_x(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("convolve: x outside [0,1]");
}

double total_value(const std::vector<DistortionCurve>& hs, const std::vector<double>& w) {
    double v = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) v += hs[i](w[i]);
    return v;
}

// ---- derivative-matching (KKT water filling) -------------------------------

// All curves strictly convex smooth: sum of clamped inverse derivatives is
// nondecreasing in the multiplier; bisect it to the budget.
std::vector<double> waterfill_convex(const std::vector<DistortionCurve>& hs, double x) {
    const std::size_t n = hs.size();
    auto weights_at = [&](double lam) {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = hs[i].inverse_derivative(lam);
        return w;
    };
    auto sum_at = [&](double lam) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += hs[i].inverse_derivative(lam);
        return s;
    };
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (sum_at(hi) < x && guard++ < 200) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (sum_at(mid) < x ? lo : hi) = mid;
    }
    std::vector<double> w = weights_at(0.5 * (lo + hi));
    // Absorb the residual bisection slack into the largest weight.
    double s = 0.0;
    for (double v : w) s += v;
    const double resid = x - s;
    auto mx = std::max_element(w.begin(), w.end());
    *mx = std::clamp(*mx + resid, 0.0, 1.0);
    return w;
}

// All curves strictly concave smooth, maximization: the inverse derivatives
// are decreasing in the multiplier, so the weight sum is too.
std::vector<double> waterfill_concave(const std::vector<DistortionCurve>& hs, double x) {
    const std::size_t n = hs.size();
    auto sum_at = [&](double lam) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += hs[i].inverse_derivative(lam);
        return s;
    };
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (sum_at(hi) > x && guard++ < 200) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (sum_at(mid) > x ? lo : hi) = mid;
    }
    const double lam = 0.5 * (lo + hi);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = hs[i].inverse_derivative(lam);
    double s = 0.0;
    for (double v : w) s += v;
    const double resid = x - s;
    auto mx = std::max_element(w.begin(), w.end());
    *mx = std::clamp(*mx + resid, 0.0, 1.0);
    return w;
}

// ---- exact greedy for piecewise-linear groups ------------------------------

struct Segment {
    double slope;
    double width;
    std::size_t agent;
};

// Segments in per-curve order; valid greedy input when each curve's slopes
// are sorted the right way (ascending for inf over convex curves,
// descending for sup over concave ones).
std::vector<Segment> pwl_segments(const std::vector<DistortionCurve>& hs) {
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const auto pts = *hs[i].as_piecewise_linear();
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const double w = pts[k + 1].first - pts[k].first;
            segs.push_back({(pts[k + 1].second - pts[k].second) / w, w, i});
        }
    }
    return segs;
}

ConvolutionResult greedy_fill(const std::vector<DistortionCurve>& hs, double x, bool ascending) {
    std::vector<Segment> segs = pwl_segments(hs);
    std::stable_sort(segs.begin(), segs.end(), [&](const Segment& a, const Segment& b) {
        return ascending ? a.slope < b.slope : a.slope > b.slope;
    });
    ConvolutionResult r;
    r.method = ConvolutionMethod::piecewise_exact;
    r.weights.assign(hs.size(), 0.0);
    double remaining = x;
    double value = 0.0;
    for (const Segment& s : segs) {
        if (remaining <= 0.0) break;
        const double take = std::min(remaining, s.width);
        r.weights[s.agent] += take;
        value += take * s.slope;
        remaining -= take;
    }
    r.value = value;
    return r;
}

bool all_pwl(const std::vector<DistortionCurve>& hs) {
    return std::all_of(hs.begin(), hs.end(),
                       [](const DistortionCurve& h) { return h.as_piecewise_linear().has_value(); });
}

// ---- generic projected coordinate descent ----------------------------------

// 1-D subproblem: optimize h_i(t) + h_j(s - t) over the feasible t range.
// A coarse scan brackets the best region (the objective need not be
// unimodal), then golden-section refines.
double line_opt(const DistortionCurve& hi, const DistortionCurve& hj, double s, bool minimize) {
    const double lo = std::max(0.0, s - 1.0);
    const double hi_b = std::min(1.0, s);
    if (hi_b - lo < 1e-15) return lo;
    auto f = [&](double t) {
        const double v = hi(t) + hj(s - t);
        return minimize ? v : -v;
    };
    const int kScan = 64;
    double best_t = lo, best_f = f(lo);
    for (int k = 1; k <= kScan; ++k) {
        const double t = lo + (hi_b - lo) * k / kScan;
        const double v = f(t);
        if (v < best_f) {
            best_f = v;
            best_t = t;
        }
    }
    const double step = (hi_b - lo) / kScan;
    const double a = std::max(lo, best_t - step);
    const double b = std::min(hi_b, best_t + step);
    const double t = golden_min(f, a, b, 1e-13);
    return f(t) < best_f ? t : best_t;
}

ConvolutionResult coordinate_search(const std::vector<DistortionCurve>& hs, double x,
                                    bool minimize) {
    const std::size_t n = hs.size();
    ConvolutionResult best;
    best.method = ConvolutionMethod::simplex_search;
    best.weights.assign(n, x / static_cast<double>(n));
    best.value = total_value(hs, best.weights);

    std::mt19937 rng(42);
    std::exponential_distribution<double> expo(1.0);

    auto run_from = [&](std::vector<double> w) {
        double val = total_value(hs, w);
        for (int sweep = 0; sweep < 200; ++sweep) {
            double improved = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double s = w[i] + w[j];
                    const double t = line_opt(hs[i], hs[j], s, minimize);
                    const double before = hs[i](w[i]) + hs[j](w[j]);
                    const double after = hs[i](t) + hs[j](s - t);
                    if (minimize ? after < before - 1e-15 : after > before + 1e-15) {
                        improved += std::abs(after - before);
                        w[i] = t;
                        w[j] = s - t;
                    }
                }
            }
            if (improved < 1e-13) break;
        }
        val = total_value(hs, w);
        const bool better = minimize ? val < best.value : val > best.value;
        if (better) {
            best.value = val;
            best.weights = std::move(w);
        }
    };

    if (n == 1) {
        best.weights = {x};
        best.value = total_value(hs, best.weights);
        return best;
    }
    run_from(best.weights);
    for (int start = 0; start < 10; ++start) {
        std::vector<double> e(n);
        double s = 0.0;
        for (auto& v : e) {
            v = expo(rng);
            s += v;
        }
        for (auto& v : e) v = std::min(1.0, v / s * x);
        run_from(std::move(e));
    }
    return best;
}

void require_h_class(const std::vector<DistortionCurve>& hs) {
    for (const auto& h : hs)
        if (!h.in_h_class())
            throw std::invalid_argument("convolve: every curve must be normalized increasing");
}

bool all_identity(const std::vector<DistortionCurve>& hs) {
    return std::all_of(hs.begin(), hs.end(), [](const DistortionCurve& h) {
        return h.family() == CurveFamily::identity;
    });
}

}  // namespace

ConvolutionResult inf_convolve(const std::vector<DistortionCurve>& hs, double x) {
    if (hs.empty()) throw std::invalid_argument("inf_convolve: empty curve list");
    check_x(x);
    require_h_class(hs);

    ConvolutionResult r;
    if (x == 0.0) {
        r.weights.assign(hs.size(), 0.0);
        r.value = 0.0;
        r.method = ConvolutionMethod::closed_form;
        return r;
    }
    if (hs.size() == 1) {
        r.weights = {x};
        r.value = hs.front()(x);
        r.method = ConvolutionMethod::closed_form;
        return r;
    }
    if (std::all_of(hs.begin(), hs.end(),
                    [](const DistortionCurve& h) { return h.strictly_convex_smooth(); })) {
        r.weights = waterfill_convex(hs, x);
        r.value = total_value(hs, r.weights);
        r.method = ConvolutionMethod::closed_form;
        return r;
    }
    if (all_identity(hs)) {
        r.weights.assign(hs.size(), x / static_cast<double>(hs.size()));
        r.value = x;
        r.method = ConvolutionMethod::closed_form;
        return r;
    }
    const bool convex_pwl = all_pwl(hs) && std::all_of(hs.begin(), hs.end(),
                                                       [](const auto& h) { return h.is_convex(); });
    if (convex_pwl) return greedy_fill(hs, x, /*ascending=*/true);
    return coordinate_search(hs, x, /*minimize=*/true);
}

ConvolutionResult sup_convolve(const std::vector<DistortionCurve>& hs, double x) {
    if (hs.empty()) throw std::invalid_argument("sup_convolve: empty curve list");
    check_x(x);
    for (const auto& h : hs)
        if (!h.is_increasing())
            throw std::invalid_argument("sup_convolve: every curve must be increasing");

    ConvolutionResult r;
    if (x == 0.0) {
        r.weights.assign(hs.size(), 0.0);
        r.value = 0.0;
        r.method = ConvolutionMethod::closed_form;
        return r;
    }
    if (hs.size() == 1) {
        r.weights = {x};
        r.value = hs.front()(x);
        r.method = ConvolutionMethod::closed_form;
        return r;
    }
    const bool concave_pwl = all_pwl(hs) && std::all_of(hs.begin(), hs.end(),
                                                        [](const auto& h) { return h.is_concave(); });
    if (concave_pwl) return greedy_fill(hs, x, /*ascending=*/false);
    if (std::all_of(hs.begin(), hs.end(),
                    [](const DistortionCurve& h) { return h.strictly_concave_smooth(); })) {
        r.weights = waterfill_concave(hs, x);
        r.value = total_value(hs, r.weights);
        r.method = ConvolutionMethod::closed_form;
        return r;
    }
    return coordinate_search(hs, x, /*minimize=*/false);
}

GridFunction grid_convolve(const std::vector<DistortionCurve>& hs, ConvolveMode mode,
                           int n_points) {
    if (n_points < 2) throw std::invalid_argument("grid_convolve: need at least 2 points");
    std::vector<double> vals(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const double t = static_cast<double>(k) / (n_points - 1);
        vals[k] = mode == ConvolveMode::inf ? inf_convolve(hs, t).value
                                            : sup_convolve(hs, t).value;
        if (k > 0 && vals[k] < vals[k - 1]) vals[k] = vals[k - 1];  // numeric monotone repair
    }
    return GridFunction(std::move(vals));
}

DistortionCurve sup_convolution_curve(const std::vector<DistortionCurve>& hs, int grid_n) {
    const bool concave_pwl =
        all_pwl(hs) &&
        std::all_of(hs.begin(), hs.end(), [](const auto& h) { return h.is_concave(); });
    if (concave_pwl) {
        std::vector<Segment> segs = pwl_segments(hs);
        std::stable_sort(segs.begin(), segs.end(),
                         [](const Segment& a, const Segment& b) { return a.slope > b.slope; });
        std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
        double t = 0.0, v = 0.0;
        for (const Segment& s : segs) {
            if (t >= 1.0 - 1e-15) break;
            const double take = std::min(s.width, 1.0 - t);
            t += take;
            v += take * s.slope;
            pts.emplace_back(t, v);
        }
        if (pts.back().first < 1.0 - 1e-15) pts.emplace_back(1.0, v);
        pts.back().first = 1.0;
        return DistortionCurve::piecewise_linear(std::move(pts));
    }
    return DistortionCurve::sampled(grid_convolve(hs, ConvolveMode::sup, grid_n));
}

DistortionCurve normalized_sup_dual(const std::vector<DistortionCurve>& hs, int grid_n) {
    if (hs.empty()) throw std::invalid_argument("normalized_sup_dual: empty curve list");
    for (const auto& h : hs)
        if (!h.in_h_class() || !h.is_convex() || !h.is_continuous())
            throw std::invalid_argument(
                "normalized_sup_dual: every curve must be convex continuous in H");
    std::vector<DistortionCurve> duals;
    duals.reserve(hs.size());
    for (const auto& h : hs) duals.push_back(dual(h));

    DistortionCurve conv = sup_convolution_curve(duals, grid_n);
    const double denom = conv.total_mass();
    if (!(denom > 0.0)) throw std::logic_error("normalized_sup_dual: nonpositive normalizer");

    if (auto pts = conv.as_piecewise_linear();
        pts && conv.family() == CurveFamily::piecewise_linear) {
        for (auto& [t, v] : *pts) v /= denom;
        pts->back().second = 1.0;
        return DistortionCurve::piecewise_linear(std::move(*pts));
    }
    std::vector<double> vals;
    if (conv.family() == CurveFamily::sampled) {
        const auto pts = *conv.as_piecewise_linear();
        vals.reserve(pts.size());
        for (const auto& [t, v] : pts) vals.push_back(v / denom);
    }
    vals.front() = 0.0;
    vals.back() = 1.0;
    return DistortionCurve::sampled(GridFunction(std::move(vals)));
}

}  // namespace riskconv
