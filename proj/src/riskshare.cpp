#include "riskconv/riskshare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "riskconv/measures.hpp"
#include "riskconv/numerics.hpp"

namespace riskconv {

namespace {

void require_h_class(const std::vector<DistortionCurve>& hs) {
    if (hs.empty()) throw std::invalid_argument("infconv: empty curve list");
    for (const auto& h : hs)
        if (!h.in_h_class())
            throw std::invalid_argument("infconv: every curve must be normalized increasing");
}

bool all_var(const std::vector<DistortionCurve>& hs) {
    return std::all_of(hs.begin(), hs.end(), [](const DistortionCurve& h) {
        return h.family() == CurveFamily::var_indicator;
    });
}

bool all_es(const std::vector<DistortionCurve>& hs) {
    return std::all_of(hs.begin(), hs.end(), [](const DistortionCurve& h) {
        return h.family() == CurveFamily::es_cap;
    });
}

bool all_convex_continuous(const std::vector<DistortionCurve>& hs) {
    return std::all_of(hs.begin(), hs.end(), [](const DistortionCurve& h) {
        return h.is_convex() && h.is_continuous();
    });
}

bool all_concave(const std::vector<DistortionCurve>& hs) {
    return std::all_of(hs.begin(), hs.end(),
                       [](const DistortionCurve& h) { return h.is_concave(); });
}

ShareRegime group_tag(const std::vector<DistortionCurve>& hs, bool min_attained) {
    if (all_es(hs)) return ShareRegime::es_family;
    if (all_var(hs)) return ShareRegime::var_family;
    if (all_concave(hs) && min_attained) return ShareRegime::all_concave_with_min;
    if (all_convex_continuous(hs)) return ShareRegime::all_convex;
    return ShareRegime::generic_bound;
}

/// Exact counter-monotonic value for an all-convex group on a signed cone,
/// with the jackpot/scapegoat allocation and the representative grid curve.
ShareResult convex_counter_value(const std::vector<DistortionCurve>& hs,
                                 const Distribution& d) {
    ShareResult r;
    r.regime = ShareRegime::all_convex;
    if (d.cone() == Cone::nonnegative) {
        const double g1 = inf_convolve(hs, 1.0).value;
        r.value = riskmetric_fn([&](double s) { return inf_convolve(hs, s).value; }, g1, d);
        r.curve = DistortionCurve::sampled(grid_convolve(hs, ConvolveMode::inf, 1001));
        r.allocation = jackpot_allocation(hs, d);
        return r;
    }
    if (d.cone() == Cone::nonpositive) {
        std::vector<DistortionCurve> duals;
        duals.reserve(hs.size());
        for (const auto& h : hs) duals.push_back(dual(h));
        const Distribution y = negate(d);
        const double l1 = sup_convolve(duals, 1.0).value;
        r.value = -riskmetric_fn([&](double s) { return sup_convolve(duals, s).value; }, l1, y);
        r.curve = dual(sup_convolution_curve(duals, 1001));
        // Scapegoat allocation: the weight functions split -X, a
        // nonnegative loss, by the duals' optimal sup-convolution shares.
        const std::size_t n = hs.size();
        std::vector<std::vector<double>> vals(n, std::vector<double>(1001));
        for (int k = 0; k < 1001; ++k) {
            const double t = static_cast<double>(k) / 1000;
            const ConvolutionResult c = sup_convolve(duals, t);
            for (std::size_t i = 0; i < n; ++i) {
                double w = c.weights[i];
                if (k > 0 && w < vals[i][k - 1]) w = vals[i][k - 1];
                vals[i][k] = w;
            }
        }
        JackpotAllocation a;
        for (auto& v : vals) a.weight_fns.emplace_back(std::move(v));
        r.allocation = std::move(a);
        return r;
    }
    throw std::domain_error("countermonotonic_infconv: convex regime needs a signed cone");
}

double min_single_agent_value(const std::vector<DistortionCurve>& hs, const Distribution& d) {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& h : hs) v = std::min(v, riskmetric(h, d));
    return v;
}

/// Certified lower bound for the unconstrained value in the generic regime.
double generic_lower_bound(const std::vector<DistortionCurve>& hs, const Distribution& d) {
    const auto n = static_cast<double>(hs.size());
    if (d.cone() == Cone::nonnegative) {
        // sum_i h_i(P(X_i >= x)) >= (inf-conv of the min curve, n-fold)(P(X >= n x))
        // for nonnegative pieces, so rho of that curve at 1/n scale bounds below.
        const DistortionCurve m = combine(hs, CombineMode::pointwise_min);
        std::vector<DistortionCurve> reps(hs.size(), m);
        const double g1 = inf_convolve(reps, 1.0).value;
        const double v =
            riskmetric_fn([&](double s) { return inf_convolve(reps, s).value; }, g1, d) / n;
        return std::max(0.0, v);
    }
    if (d.cone() == Cone::nonpositive) {
        // Each piece dominates X pointwise, so sum_i rho_{h_i}(X) bounds below.
        double v = 0.0;
        for (const auto& h : hs) v += riskmetric(h, d);
        return v;
    }
    return -std::numeric_limits<double>::infinity();
}

}  // namespace

ShareResult comonotonic_infconv(const std::vector<DistortionCurve>& hs, const Distribution& d) {
    require_h_class(hs);
    ShareResult r;
    const auto attained = attained_envelope(hs, CombineMode::pointwise_min);
    r.regime = group_tag(hs, attained.has_value());
    if (attained) {
        r.curve = hs[*attained];
        r.value = riskmetric(r.curve, d);
        r.allocation = SingleAgent{*attained};
    } else {
        r.curve = combine(hs, CombineMode::pointwise_min);
        r.value = riskmetric(r.curve, d);
    }
    return r;
}

ShareResult countermonotonic_infconv(const std::vector<DistortionCurve>& hs,
                                     const Distribution& d) {
    require_h_class(hs);

    // Quantile family: the levels add up.
    if (all_var(hs)) {
        double sum = 0.0;
        for (const auto& h : hs) sum += h.param();
        if (sum >= 1.0)
            throw std::domain_error("countermonotonic_infconv: VaR levels must sum below 1");
        ShareResult r;
        r.regime = ShareRegime::var_family;
        r.curve = DistortionCurve::var_indicator(sum);
        r.value = var(d, sum);
        return r;
    }

    // Attained dually-subadditive minimum: one agent absorbs everything.
    const auto attained = attained_envelope(hs, CombineMode::pointwise_min);
    if (attained &&
        (hs[*attained].is_concave() || is_dually_subadditive(hs[*attained]))) {
        ShareResult r;
        r.regime = all_es(hs) ? ShareRegime::es_family : ShareRegime::all_concave_with_min;
        r.curve = hs[*attained];
        r.value = riskmetric(r.curve, d);
        r.allocation = SingleAgent{*attained};
        return r;
    }

    // Risk-seeking group on a signed cone: exact convolution formula.
    if (all_convex_continuous(hs)) return convex_counter_value(hs, d);

    // No exact claim: certified bracket.
    ShareResult r;
    r.regime = ShareRegime::generic_bound;
    r.curve = combine(hs, CombineMode::pointwise_min);
    r.lower_bound = generic_lower_bound(hs, d);
    r.upper_bound = min_single_agent_value(hs, d);
    r.value = *r.upper_bound;
    return r;
}

ShareResult unconstrained_infconv(const std::vector<DistortionCurve>& hs,
                                  const Distribution& d) {
    require_h_class(hs);

    if (all_var(hs)) {
        double sum = 0.0;
        for (const auto& h : hs) sum += h.param();
        if (sum >= 1.0)
            throw std::domain_error("unconstrained_infconv: VaR levels must sum below 1");
        ShareResult r;
        r.regime = ShareRegime::var_family;
        r.curve = DistortionCurve::var_indicator(sum);
        r.value = var(d, sum);
        return r;
    }

    const auto attained = attained_envelope(hs, CombineMode::pointwise_min);
    if (all_concave(hs) && attained) {
        ShareResult r;
        r.regime = all_es(hs) ? ShareRegime::es_family : ShareRegime::all_concave_with_min;
        r.curve = hs[*attained];
        r.value = riskmetric(r.curve, d);
        r.allocation = SingleAgent{*attained};
        return r;
    }

    if (all_convex_continuous(hs) &&
        (d.cone() == Cone::nonnegative || d.cone() == Cone::nonpositive)) {
        ShareResult r = convex_counter_value(hs, d);
        r.regime = ShareRegime::all_convex;
        return r;
    }

    ShareResult r;
    r.regime = ShareRegime::generic_bound;
    r.curve = combine(hs, CombineMode::pointwise_min);
    r.lower_bound = generic_lower_bound(hs, d);
    r.upper_bound = riskmetric(r.curve, d);  // comonotonic value
    r.value = *r.upper_bound;
    return r;
}

std::pair<DiscreteAllocation, double> divergence_certificate(
    const std::vector<DistortionCurve>& hs, double m) {
    require_h_class(hs);
    if (m < 0.0) throw std::invalid_argument("divergence_certificate: m must be >= 0");
    for (const auto& h : hs) {
        if (!h.is_convex())
            throw std::invalid_argument("divergence_certificate: curves must be convex");
        if (h.family() == CurveFamily::identity)
            throw std::invalid_argument("divergence_certificate: identity curve has no gap");
    }
    const auto n = hs.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    double hmax = 0.0;
    for (const auto& h : hs) hmax = std::max(hmax, h(inv_n));
    const double theta = static_cast<double>(n) * hmax;
    if (theta >= 1.0 - 1e-12)
        throw std::invalid_argument("divergence_certificate: group behaves like the identity");

    DiscreteAllocation a;
    a.atom_probs.assign(n, inv_n);
    a.payoffs.assign(n, std::vector<double>(n, -m));
    for (std::size_t j = 0; j < n; ++j) a.payoffs[j][j] = static_cast<double>(n) * m - m;
    const double value = static_cast<double>(n) * (theta - 1.0) * m;
    return {std::move(a), value};
}

double allocation_total_risk(const std::vector<DistortionCurve>& hs, const JackpotAllocation& a,
                             const Distribution& d) {
    if (hs.size() != a.weight_fns.size())
        throw std::invalid_argument("allocation_total_risk: curve/weight count mismatch");
    if (d.cone() == Cone::nonnegative) {
        auto composite = [&](double s) {
            double v = 0.0;
            for (std::size_t i = 0; i < hs.size(); ++i) v += hs[i](a.weight_fns[i](s));
            return v;
        };
        return riskmetric_fn(composite, composite(1.0), d);
    }
    if (d.cone() == Cone::nonpositive) {
        std::vector<DistortionCurve> duals;
        duals.reserve(hs.size());
        for (const auto& h : hs) duals.push_back(dual(h));
        const Distribution y = negate(d);
        auto composite = [&](double s) {
            double v = 0.0;
            for (std::size_t i = 0; i < duals.size(); ++i) v += duals[i](a.weight_fns[i](s));
            return v;
        };
        return -riskmetric_fn(composite, composite(1.0), y);
    }
    throw std::domain_error("allocation_total_risk: law must live on a signed cone");
}

}  // namespace riskconv
