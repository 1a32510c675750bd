#include "riskconv/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "riskconv/numerics.hpp"

namespace riskconv {

std::vector<double> DiscreteAllocation::aggregate() const {
    std::vector<double> agg(payoffs.size(), 0.0);
    for (std::size_t k = 0; k < payoffs.size(); ++k)
        for (double v : payoffs[k]) agg[k] += v;
    return agg;
}

std::pair<Composition, double> constant_share(const std::vector<double>& alphas) {
    if (alphas.empty()) throw std::invalid_argument("constant_share: empty alpha list");
    for (double a : alphas)
        if (!(a > 1.0)) throw std::invalid_argument("constant_share: every alpha must be > 1");

    const std::size_t n = alphas.size();
    auto weight = [&](double lam, double a) {
        // (lam/a)^(1/(a-1)) in log space; exponents blow up near a = 1.
        const double e = std::log(lam / a) / (a - 1.0);
        if (e >= 0.0) return 1.0;
        return e < -745.0 ? 0.0 : std::exp(e);
    };
    auto total = [&](double lam) {
        double s = 0.0;
        for (double a : alphas) s += weight(lam, a);
        return s;
    };
    const double a_min = *std::min_element(alphas.begin(), alphas.end());
    double lo = 0.0, hi = a_min;  // total(a_min) >= 1: the smallest-alpha term is 1
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (total(mid) < 1.0 ? lo : hi) = mid;
    }
    const double lam = 0.5 * (lo + hi);

    Composition c;
    c.probs.resize(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c.probs[i] = weight(lam, alphas[i]);
        s += c.probs[i];
    }
    for (auto& p : c.probs) p /= s;  // absorb bisection slack, keep sum exactly 1

    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += std::pow(c.probs[i], alphas[i]);
    return {std::move(c), value};
}

JackpotAllocation jackpot_allocation(const std::vector<DistortionCurve>& hs,
                                     const Distribution& d, int grid_n) {
    if (d.cone() != Cone::nonnegative)
        throw std::domain_error("jackpot_allocation: law must be nonnegative");
    for (const auto& h : hs)
        if (!h.in_h_class() || !h.is_convex() || !h.is_continuous())
            throw std::invalid_argument(
                "jackpot_allocation: every curve must be convex continuous in H");

    const std::size_t n = hs.size();
    std::vector<std::vector<double>> vals(n, std::vector<double>(grid_n));
    for (int k = 0; k < grid_n; ++k) {
        const double t = static_cast<double>(k) / (grid_n - 1);
        const ConvolutionResult r = inf_convolve(hs, t);
        for (std::size_t i = 0; i < n; ++i) {
            double w = r.weights[i];
            if (k > 0 && w < vals[i][k - 1]) w = vals[i][k - 1];  // monotone repair
            vals[i][k] = w;
        }
    }
    JackpotAllocation a;
    a.weight_fns.reserve(n);
    for (auto& v : vals) a.weight_fns.emplace_back(std::move(v));
    return a;
}

bool pairwise_countermonotonic_check(const DiscreteAllocation& a) {
    const std::size_t m = a.n_atoms(), n = a.n_agents();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t w1 = 0; w1 < m; ++w1) {
                if (!(a.atom_probs[w1] > 0.0)) continue;
                for (std::size_t w2 = w1 + 1; w2 < m; ++w2) {
                    if (!(a.atom_probs[w2] > 0.0)) continue;
                    const double di = a.payoffs[w1][i] - a.payoffs[w2][i];
                    const double dj = a.payoffs[w1][j] - a.payoffs[w2][j];
                    if (di * dj > 1e-12) return false;
                }
            }
        }
    }
    return true;
}

namespace {

constexpr double kFormTol = 1e-9;

struct RecoveryAttempt {
    bool ok = false;
    double worst = 0.0;
    CounterMonotonicForm form;
};

RecoveryAttempt try_side(const DiscreteAllocation& a, CounterSide side,
                         const std::vector<double>& agg) {
    const std::size_t m = a.n_atoms(), n = a.n_agents();
    RecoveryAttempt out;
    CounterMonotonicForm f;
    f.side = side;
    f.m_consts.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = a.payoffs[0][i];
        for (std::size_t k = 1; k < m; ++k) {
            v = side == CounterSide::below_essinf ? std::min(v, a.payoffs[k][i])
                                                  : std::max(v, a.payoffs[k][i]);
        }
        f.m_consts[i] = v;
    }
    f.m_total = 0.0;
    for (double v : f.m_consts) f.m_total += v;

    const double agg_min = *std::min_element(agg.begin(), agg.end());
    const double agg_max = *std::max_element(agg.begin(), agg.end());
    if (side == CounterSide::below_essinf && f.m_total > agg_min + kFormTol) return out;
    if (side == CounterSide::above_esssup && f.m_total < agg_max - kFormTol) return out;

    // Each atom must have exactly one agent carrying the residual X - m;
    // atoms where X = m can sit in any cell of the composition.
    f.composition.probs.assign(n, 0.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double resid = agg[k] - f.m_total;
        std::size_t active = n;  // n = unassigned
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double off = std::abs(a.payoffs[k][i] - f.m_consts[i]);
            const double on = std::abs(a.payoffs[k][i] - (f.m_consts[i] + resid));
            if (off <= kFormTol) continue;  // consistent with "inactive"
            if (on <= kFormTol && active == n) {
                active = i;
            } else {
                dev = std::max(dev, std::min(off, on));
            }
        }
        worst = std::max(worst, dev);
        if (dev > kFormTol) {
            out.worst = worst;
            return out;
        }
        if (active == n) active = 0;  // zero-residual atom: composition cell is arbitrary
        f.composition.probs[active] += a.atom_probs[k];
    }
    out.ok = true;
    out.worst = worst;
    out.form = std::move(f);
    return out;
}

}  // namespace

CounterMonotonicForm countermonotonic_form(const DiscreteAllocation& a) {
    const std::size_t m = a.n_atoms(), n = a.n_agents();
    if (m == 0 || n == 0) throw std::invalid_argument("countermonotonic_form: empty allocation");
    std::size_t nondegenerate = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double lo = a.payoffs[0][i], hi = lo;
        for (std::size_t k = 1; k < m; ++k) {
            lo = std::min(lo, a.payoffs[k][i]);
            hi = std::max(hi, a.payoffs[k][i]);
        }
        if (hi - lo > kFormTol) ++nondegenerate;
    }
    if (nondegenerate < 3)
        throw std::invalid_argument(
            "countermonotonic_form: needs at least three non-degenerate components "
            "(bivariate regime is out of scope)");

    const std::vector<double> agg = a.aggregate();
    const RecoveryAttempt below = try_side(a, CounterSide::below_essinf, agg);
    if (below.ok) return below.form;
    const RecoveryAttempt above = try_side(a, CounterSide::above_esssup, agg);
    if (above.ok) return above.form;
    throw std::invalid_argument(
        "countermonotonic_form: payoffs do not fit the structure (max deviation " +
        std::to_string(std::max(below.worst, above.worst)) + ")");
}

}  // namespace riskconv
