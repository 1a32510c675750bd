#pragma once

#include <vector>

#include "riskconv/convolution.hpp"
#include "riskconv/distortion.hpp"
#include "riskconv/distribution.hpp"

namespace riskconv {

/// Probability split of a winner-takes-all lottery: p_i >= 0, sum = 1.
struct Composition {
    std::vector<double> probs;
};

/// Per-agent weight functions f_i on [0,1]: agent i's conditional chance of
/// taking the whole loss at survival level t is f_i'(t), so
/// P(X 1_{A_i} >= x) = f_i(S_X(x)). Each f_i is nondecreasing with
/// f_i(0) = 0 and sum_i f_i = identity on the grid.
struct JackpotAllocation {
    std::vector<GridFunction> weight_fns;
};

/// Atom-by-agent payoff matrix with atom probabilities.
struct DiscreteAllocation {
    std::vector<double> atom_probs;
    std::vector<std::vector<double>> payoffs;  // payoffs[atom][agent]

    std::size_t n_atoms() const { return atom_probs.size(); }
    std::size_t n_agents() const { return payoffs.empty() ? 0 : payoffs.front().size(); }
    /// Row sums (the aggregate payoff per atom).
    std::vector<double> aggregate() const;
};

enum class CounterSide { below_essinf, above_esssup };

/// Structural form X_i = (X - m) 1_{A_i} + m_i of a counter-monotonic
/// allocation with at least three non-degenerate components.
struct CounterMonotonicForm {
    std::vector<double> m_consts;
    double m_total = 0.0;
    Composition composition;
    CounterSide side = CounterSide::below_essinf;
};

/// Optimal probability split for power curves t^{alpha_i} sharing a unit
/// constant: solves sum (lam/alpha_i)^{1/(alpha_i-1)} = 1 by bisection.
/// Returns the split and the attained value sum w_i^{alpha_i}. For n >= 3
/// sorted alphas yield a sorted split; for n = 2 no ordering is guaranteed.
std::pair<Composition, double> constant_share(const std::vector<double>& alphas);

/// Winner-takes-all allocation of a nonnegative loss for convex continuous
/// curves in H: weight functions are the optimal inf-convolution splits
/// sampled on `grid_n` points.
JackpotAllocation jackpot_allocation(const std::vector<DistortionCurve>& hs,
                                     const Distribution& d, int grid_n = 1001);

/// True iff every agent pair moves in opposite directions across every
/// positive-probability atom pair (products <= 1e-12).
bool pairwise_countermonotonic_check(const DiscreteAllocation& a);

/// Recovers the m_i constants, the composition and the side from a
/// counter-monotonic payoff matrix; throws when fewer than three
/// non-degenerate components (bivariate regime) or when the payoffs do not
/// fit the structure (the error message carries the worst deviation).
CounterMonotonicForm countermonotonic_form(const DiscreteAllocation& a);

}  // namespace riskconv
