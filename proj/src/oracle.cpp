#include "riskconv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riskconv {
namespace oracle {

namespace {

// Per-level minimum of sum h_i(p_i) subject to p_i >= 0, sum p_i = s, found
// without touching the convolution solvers. Nested line search for n = 2,
// pairwise coordinate descent built on it otherwise.
double split_min2(const DistortionCurve& h1, const DistortionCurve& h2, double s,
                  double* arg = nullptr) {
    const double lo = std::max(0.0, s - 1.0);
    const double hi = std::min(1.0, s);
    double best_t = lo, best_v = h1(lo) + h2(s - lo);
    double a = lo, b = hi;
    const int kPoints = 2001;
    for (int round = 0; round < 3; ++round) {
        const double step = (b - a) / (kPoints - 1);
        if (step <= 0.0) break;
        for (int k = 0; k < kPoints; ++k) {
            const double t = a + step * k;
            const double v = h1(t) + h2(s - t);
            if (v < best_v) {
                best_v = v;
                best_t = t;
            }
        }
        a = std::max(lo, best_t - step);
        b = std::min(hi, best_t + step);
    }
    if (arg) *arg = best_t;
    return best_v;
}

double split_min(const std::vector<DistortionCurve>& hs, double s) {
    const std::size_t n = hs.size();
    if (n == 1) return hs.front()(std::min(s, 1.0));
    if (n == 2) return split_min2(hs[0], hs[1], s);
    std::vector<double> w(n, s / static_cast<double>(n));
    double val = 0.0;
    for (std::size_t i = 0; i < n; ++i) val += hs[i](w[i]);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double sweep_gain = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double pair_sum = w[i] + w[j];
                const double before = hs[i](w[i]) + hs[j](w[j]);
                double t;
                const double after = split_min2(hs[i], hs[j], pair_sum, &t);
                if (after < before - 1e-15) {
                    w[i] = t;
                    w[j] = pair_sum - t;
                    sweep_gain += before - after;
                }
            }
        }
        if (sweep_gain < 1e-13) break;
    }
    val = 0.0;
    for (std::size_t i = 0; i < n; ++i) val += hs[i](w[i]);
    return val;
}

}  // namespace

LevelGrid make_level_grid(const Distribution& d, int n_levels) {
    LevelGrid g;
    g.levels.reserve(static_cast<std::size_t>(n_levels) + 1);
    for (int k = 0; k <= n_levels; ++k) {
        const double p = static_cast<double>(k) / n_levels;
        double x = p < 1.0 ? d.quantile(p) : d.upper_quantile(1.0 / n_levels * 0.5);
        if (!g.levels.empty() && x <= g.levels.back()) continue;
        g.levels.push_back(x);
    }
    g.survival_values.reserve(g.levels.size());
    for (double x : g.levels) g.survival_values.push_back(d.survival(x));
    return g;
}

double oracle_levelwise(const std::vector<DistortionCurve>& hs, const Distribution& d,
                        int n_levels) {
    if (d.cone() != Cone::nonnegative)
        throw std::domain_error("oracle_levelwise: law must be nonnegative");
    for (const auto& h : hs)
        if (!h.in_h_class())
            throw std::invalid_argument("oracle_levelwise: curves must be in H");

    double total = 0.0;
    if (d.is_discrete()) {
        const auto& atoms = d.atoms();
        double tail = 1.0;
        double prev = 0.0;
        for (const auto& [v, p] : atoms) {
            total += (v - prev) * split_min(hs, tail);
            prev = v;
            tail -= p;
        }
        return total;
    }

    const double lo = std::max(d.lower(), 0.0);
    total += lo * split_min(hs, 1.0);  // S = 1 on [0, lower]

    // Trapezoid over quantile-equispaced levels.
    std::vector<double> xs, ms;
    xs.reserve(static_cast<std::size_t>(n_levels) + 1);
    for (int k = 0; k <= n_levels; ++k) {
        const double p = static_cast<double>(k) / n_levels;
        double x = p < 1.0 ? d.quantile(p) : d.upper_quantile(0.5 / n_levels);
        x = std::max(x, lo);
        if (!xs.empty() && x <= xs.back() + 1e-15) continue;
        xs.push_back(x);
        ms.push_back(split_min(hs, d.survival(x)));
    }
    for (std::size_t k = 0; k + 1 < xs.size(); ++k)
        total += 0.5 * (ms[k] + ms[k + 1]) * (xs[k + 1] - xs[k]);

    // Tail beyond the last level: the per-level minimum is near-linear at
    // small survival, so scale the remaining tail expectation by the local
    // slope.
    const double s_last = d.survival(xs.back());
    if (s_last > 0.0 && std::isinf(d.upper())) {
        const double slope = split_min(hs, s_last) / s_last;
        // E[(X - x_last)_+] by a small survival-space sum.
        double tail_mean = 0.0;
        double s_hi = s_last;
        for (int k = 0; k < 60 && s_hi > 1e-14; ++k) {
            const double s_lo2 = s_hi * 0.7;
            const double x_hi = d.upper_quantile(s_lo2);
            const double x_lo = d.upper_quantile(s_hi);
            tail_mean += 0.5 * (s_hi + s_lo2) * (x_hi - x_lo);
            s_hi = s_lo2;
        }
        total += slope * tail_mean;
    }
    return total;
}

std::pair<Composition, double> oracle_constant_share(const std::vector<double>& alphas,
                                                     int grid_n) {
    const std::size_t n = alphas.size();
    if (n != 2 && n != 3)
        throw std::invalid_argument("oracle_constant_share: exhaustive grids cover n = 2 or 3");
    for (double a : alphas)
        if (!(a > 1.0)) throw std::invalid_argument("oracle_constant_share: alphas must be > 1");

    auto value = [&](const std::vector<double>& w) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += std::pow(w[i], alphas[i]);
        return v;
    };

    std::vector<double> best;
    double best_v = std::numeric_limits<double>::infinity();
    auto scan = [&](double lo1, double hi1, double lo2, double hi2, double step) {
        for (double w1 = lo1; w1 <= hi1 + 1e-15; w1 += step) {
            if (n == 2) {
                const std::vector<double> w{w1, 1.0 - w1};
                if (w[1] < -1e-15) continue;
                const double v = value(w);
                if (v < best_v) {
                    best_v = v;
                    best = w;
                }
            } else {
                for (double w2 = lo2; w2 <= hi2 + 1e-15; w2 += step) {
                    const double w3 = 1.0 - w1 - w2;
                    if (w3 < -1e-15) break;
                    const std::vector<double> w{w1, w2, std::max(w3, 0.0)};
                    const double v = value(w);
                    if (v < best_v) {
                        best_v = v;
                        best = w;
                    }
                }
            }
        }
    };

    const double step = 1.0 / grid_n;
    scan(0.0, 1.0, 0.0, 1.0, step);
    // One refinement pass at 10x resolution around the incumbent.
    const double r = step;
    if (n == 2) {
        scan(std::max(0.0, best[0] - r), std::min(1.0, best[0] + r), 0.0, 0.0, step / 10.0);
    } else {
        scan(std::max(0.0, best[0] - r), std::min(1.0, best[0] + r),
             std::max(0.0, best[1] - r), std::min(1.0, best[1] + r), step / 10.0);
    }
    Composition c;
    c.probs = std::move(best);
    return {std::move(c), best_v};
}

bool convex_order_leq(const Distribution& x, const Distribution& y) {
    if (!x.is_discrete() || !y.is_discrete())
        throw std::invalid_argument("convex_order_leq: discrete laws only");
    auto mean = [](const Distribution& d) {
        double m = 0.0;
        for (const auto& [v, p] : d.atoms()) m += v * p;
        return m;
    };
    if (std::abs(mean(x) - mean(y)) > 1e-9) return false;
    auto stop_loss = [](const Distribution& d, double level) {
        double e = 0.0;
        for (const auto& [v, p] : d.atoms()) e += std::max(v - level, 0.0) * p;
        return e;
    };
    std::vector<double> levels;
    for (const auto& [v, p] : x.atoms()) levels.push_back(v);
    for (const auto& [v, p] : y.atoms()) levels.push_back(v);
    for (double l : levels)
        if (stop_loss(x, l) > stop_loss(y, l) + 1e-12) return false;
    return true;
}

}  // namespace oracle
}  // namespace riskconv
