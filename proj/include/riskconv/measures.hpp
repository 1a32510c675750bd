#pragma once

#include <functional>
#include <vector>

#include "riskconv/distortion.hpp"
#include "riskconv/distribution.hpp"

namespace riskconv {

/// Distortion riskmetric
///   rho_h(X) = int_0^inf h(P(X>=x)) dx + int_{-inf}^0 (h(P(X>=x)) - h(1)) dx.
/// Discrete laws are evaluated by exact finite sums; continuous laws by
/// adaptive Simpson (abs tol 1e-8) with kink split hints, far-tail
/// truncation and a power-law remainder estimate. Throws DivergenceError
/// when a tail integral fails the decay test.
double riskmetric(const DistortionCurve& h, const Distribution& d);

/// Same integral for an arbitrary increasing curve on [0,1] given as a
/// callable with its total mass curve(1) and optional kink locations.
/// This is what the convolution-based solvers feed their exact pointwise
/// curves through. `complement`, when given, must evaluate
/// q -> curve(1) - curve(1 - q) without cancellation; the lower-tail
/// integrand is computed through it (the dual curve does this exactly).
double riskmetric_fn(const std::function<double(double)>& curve, double total_mass,
                     const Distribution& d, const std::vector<double>& kinks = {},
                     const std::function<double(double)>& complement = {});

/// VaR_alpha(X) = inf{x : P(X<=x) >= 1-alpha}, alpha in [0,1).
double var(const Distribution& d, double alpha);

/// ES_beta(X) = (1/beta) int_0^beta VaR_gamma(X) dgamma, beta in (0,1).
/// Exact tail average for discrete laws, quadrature otherwise.
double es(const Distribution& d, double beta);

}  // namespace riskconv
