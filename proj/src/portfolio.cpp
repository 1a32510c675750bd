#include "riskconv/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riskconv/measures.hpp"
#include "riskconv/numerics.hpp"

namespace riskconv {

CostFunction CostFunction::quadratic() {
    CostFunction f;
    f.c_ = [](double l) { return 0.5 * l * l; };
    f.cp_ = [](double l) { return l; };
    f.cpinv_ = [](double y) { return y; };
    f.quadratic_ = true;
    return f;
}

CostFunction CostFunction::custom(std::function<double(double)> c,
                                  std::function<double(double)> c_prime,
                                  std::function<double(double)> c_prime_inverse) {
    CostFunction f;
    f.c_ = std::move(c);
    f.cp_ = std::move(c_prime);
    f.cpinv_ = std::move(c_prime_inverse);
    for (int k = 0; k <= 20; ++k) {
        const double l = static_cast<double>(k) / 20.0;
        if (std::abs(f.cpinv_(f.cp_(l)) - l) > 1e-9)
            throw std::invalid_argument("CostFunction: c_prime_inverse does not invert c_prime");
        if (k > 0 && f.cp_(l) < f.cp_((k - 1) / 20.0) - 1e-12)
            throw std::invalid_argument("CostFunction: cost must be convex (c' increasing)");
    }
    return f;
}

double CostFunction::cost_inverse(double w) const {
    if (quadratic_) return std::sqrt(2.0 * std::max(w, 0.0));
    if (w <= c_(0.0)) return 0.0;
    if (w >= c_(1.0)) return 1.0;
    return bisect_root([&](double l) { return c_(l) - w; }, 0.0, 1.0, 1e-12);
}

PortfolioSolution optimal_lambda(const std::vector<DistortionCurve>& hs, const Distribution& d,
                                 double wealth, const CostFunction& cost, bool strict_budget) {
    if (hs.empty()) throw std::invalid_argument("optimal_lambda: empty curve list");
    if (d.cone() != Cone::nonnegative)
        throw std::domain_error("optimal_lambda: payoff law must be nonnegative");
    if (!(wealth >= 0.0)) throw std::invalid_argument("optimal_lambda: wealth must be >= 0");
    for (const auto& h : hs)
        if (!h.in_h_class())
            throw std::invalid_argument("optimal_lambda: every curve must be in H");

    const bool concave = std::all_of(hs.begin(), hs.end(),
                                     [](const auto& h) { return h.is_concave(); });
    const bool convex = std::all_of(hs.begin(), hs.end(), [](const auto& h) {
        return h.is_convex() && h.is_continuous();
    });
    if (!concave && !convex)
        throw std::invalid_argument("optimal_lambda: group must be all concave or all convex");

    PortfolioSolution sol;
    if (concave) {
        sol.regime = PortfolioRegime::concave_group;
        const auto attained = attained_envelope(hs, CombineMode::pointwise_min);
        sol.representative =
            attained ? dual(hs[*attained]) : dual(combine(hs, CombineMode::pointwise_min));
    } else {
        sol.regime = PortfolioRegime::convex_group;
        sol.representative = normalized_sup_dual(hs);
    }
    sol.rho_value = riskmetric(sol.representative, d);
    sol.budget_bound = strict_budget ? cost.cost_inverse(wealth) : cost.marginal_inverse(wealth);
    const double raw = std::min(cost.marginal_inverse(sol.rho_value), sol.budget_bound);
    sol.lambda_star = std::clamp(raw, 0.0, 1.0);
    sol.clamped = raw != sol.lambda_star;
    return sol;
}

std::vector<SweepRow> comparative_sweep(const GroupBuilder& family,
                                        const std::vector<double>& alphas,
                                        const Distribution& d, double wealth,
                                        const CostFunction& cost) {
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) {
        const PortfolioSolution sol = optimal_lambda(family(a), d, wealth, cost);
        rows.push_back({a, sol.lambda_star});
    }
    return rows;
}

std::vector<double> crossing_points(const std::vector<DistortionCurve>& hs,
                                    const std::vector<DistortionCurve>& gs, int grid_n) {
    if (grid_n < 2) throw std::invalid_argument("crossing_points: grid too small");
    auto check = [](const std::vector<DistortionCurve>& cs) {
        if (cs.empty()) throw std::invalid_argument("crossing_points: empty group");
        for (const auto& c : cs)
            if (!c.in_h_class() || !c.is_convex() || !c.is_continuous())
                throw std::invalid_argument(
                    "crossing_points: groups must be convex continuous in H");
    };
    check(hs);
    check(gs);

    auto make_eval = [](const std::vector<DistortionCurve>& cs) {
        std::vector<DistortionCurve> duals;
        duals.reserve(cs.size());
        for (const auto& c : cs) duals.push_back(dual(c));
        const double denom = sup_convolve(duals, 1.0).value;
        return [duals = std::move(duals), denom](double x) {
            return sup_convolve(duals, x).value / denom;
        };
    };
    const auto fh = make_eval(hs);
    const auto fg = make_eval(gs);
    auto diff = [&](double x) { return fg(x) - fh(x); };

    constexpr double kZero = 1e-13;
    std::vector<double> roots;
    double prev_x = 0.0;
    double prev_d = diff(0.0);
    for (int k = 1; k < grid_n; ++k) {
        const double x = static_cast<double>(k) / (grid_n - 1);
        const double dv = diff(x);
        if (std::abs(prev_d) > kZero && std::abs(dv) > kZero && prev_d * dv < 0.0) {
            const double root = bisect_root(diff, prev_x, x, 1e-9);
            if (roots.empty() || root - roots.back() > 1e-6) roots.push_back(root);
        }
        if (std::abs(dv) > kZero) {
            prev_x = x;
            prev_d = dv;
        }
    }
    return roots;
}

std::vector<DistortionCurve> sweep_family_concave(double alpha) {
    if (!(alpha >= 0.5))
        throw std::invalid_argument("sweep_family_concave: alpha must be >= 1/2");
    return {DistortionCurve::dual_power(2.0 * alpha), DistortionCurve::dual_power(3.0 * alpha)};
}

std::vector<DistortionCurve> sweep_family_convex(double alpha) {
    if (!(alpha > 0.0 && 0.3 * alpha <= 1.0))
        throw std::invalid_argument("sweep_family_convex: need alpha in (0, 10/3]");
    return {DistortionCurve::dual_power(0.2 * alpha), DistortionCurve::dual_power(0.3 * alpha)};
}

}  // namespace riskconv
