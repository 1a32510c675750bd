#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace riskconv {

/// Raised when a tail integral fails the decay test or an iteration fails
/// to converge.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive Simpson quadrature on [a, b] with absolute tolerance `abs_tol`.
/// Recursion stops at `max_depth` (the local estimate is then accepted).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-8, int max_depth = 40);

/// Same, but splits [a, b] at the given interior points first (kink hints).
double adaptive_simpson_split(const std::function<double(double)>& f, double a, double b,
                              std::vector<double> interior_points,
                              double abs_tol = 1e-8, int max_depth = 40);

/// Root of an increasing-or-decreasing continuous f on [lo, hi] with
/// f(lo), f(hi) of opposite sign. Plain bisection; returns the midpoint of
/// the final bracket.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double x_tol = 1e-12, int max_iter = 200);

/// Minimum of a unimodal f on [lo, hi] by golden-section search.
/// Returns the argmin; endpoints are compared as well.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double x_tol = 1e-12);

/// Standard normal quantile (Acklam's rational approximation polished with
/// one Halley step against erfc); |error| below 1e-14 away from 0 and 1.
double inverse_normal_cdf(double p);

/// Standard normal survival function, accurate in the far tail.
double normal_sf(double z);

}  // namespace riskconv
