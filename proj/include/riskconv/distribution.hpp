#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace riskconv {

enum class Cone { nonnegative, nonpositive, general };

enum class DistFamily { uniform, pareto, lognormal, discrete, negated };

/// A loss law given by survival/cdf/quantile evaluators plus support and a
/// declared cone orientation. Immutable; cheap to copy (shared inner state).
class Distribution {
public:
    static Distribution uniform(double a, double b);
    /// Pareto with survival (theta/x)^alpha on x >= theta (see README for
    /// how this parametrization was fixed).
    static Distribution pareto(double alpha, double theta);
    static Distribution lognormal(double mu, double sigma);
    static Distribution discrete(std::vector<std::pair<double, double>> atoms);

    DistFamily family() const;
    Cone cone() const;
    double lower() const;  // support bounds (may be +-inf)
    double upper() const;

    double survival(double x) const;  // P(X >= x)
    double cdf(double x) const;       // P(X <= x)
    double quantile(double p) const;  // inf{x : F(x) >= p}
    /// Quantile at probability 1-s, stable for tiny s (deep upper tail).
    double upper_quantile(double s) const;
    /// Quantile at probability s, stable for tiny s (deep lower tail).
    double lower_quantile(double s) const;

    bool is_discrete() const;
    /// Sorted atoms (value, probability); only for discrete laws
    /// (including negated discrete).
    const std::vector<std::pair<double, double>>& atoms() const;

    /// Law of -X; applying it twice returns the original law.
    Distribution negated() const;
    /// The wrapped law when this is a negation; used by the L- solvers.
    Distribution inner() const;

private:
    struct Impl;
    explicit Distribution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Law of -X with flipped cone.
Distribution negate(const Distribution& d);

}  // namespace riskconv
