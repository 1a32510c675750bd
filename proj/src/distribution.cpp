#include "riskconv/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "riskconv/numerics.hpp"

namespace riskconv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

struct Distribution::Impl {
    DistFamily family = DistFamily::uniform;
    Cone cone = Cone::general;
    double lower = 0.0, upper = 0.0;
    double p1 = 0.0, p2 = 0.0;                      // family parameters
    std::vector<std::pair<double, double>> atoms;   // discrete (sorted)
    std::vector<double> cum;                        // cumulative probabilities
    std::shared_ptr<const Impl> inner;              // negated wrapper
};

namespace {

Cone infer_cone(double lo, double hi) {
    if (lo >= 0.0) return Cone::nonnegative;
    if (hi <= 0.0) return Cone::nonpositive;
    return Cone::general;
}

Cone flip(Cone c) {
    switch (c) {
        case Cone::nonnegative: return Cone::nonpositive;
        case Cone::nonpositive: return Cone::nonnegative;
        default: return Cone::general;
    }
}

}  // namespace

Distribution Distribution::uniform(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("uniform: need a < b");
    auto impl = std::make_shared<Impl>();
    impl->family = DistFamily::uniform;
    impl->lower = a;
    impl->upper = b;
    impl->p1 = a;
    impl->p2 = b;
    impl->cone = infer_cone(a, b);
    return Distribution(std::move(impl));
}

Distribution Distribution::pareto(double alpha, double theta) {
    if (!(alpha > 1.0)) throw std::invalid_argument("pareto: alpha must be > 1");
    if (!(theta > 0.0)) throw std::invalid_argument("pareto: theta must be > 0");
    auto impl = std::make_shared<Impl>();
    impl->family = DistFamily::pareto;
    impl->lower = theta;
    impl->upper = kInf;
    impl->p1 = alpha;
    impl->p2 = theta;
    impl->cone = Cone::nonnegative;
    return Distribution(std::move(impl));
}

Distribution Distribution::lognormal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("lognormal: sigma must be > 0");
    auto impl = std::make_shared<Impl>();
    impl->family = DistFamily::lognormal;
    impl->lower = 0.0;
    impl->upper = kInf;
    impl->p1 = mu;
    impl->p2 = sigma;
    impl->cone = Cone::nonnegative;
    return Distribution(std::move(impl));
}

Distribution Distribution::discrete(std::vector<std::pair<double, double>> atoms) {
    if (atoms.empty()) throw std::invalid_argument("discrete: no atoms");
    std::sort(atoms.begin(), atoms.end());
    // Merge duplicate values.
    std::vector<std::pair<double, double>> merged;
    for (const auto& [v, p] : atoms) {
        if (!(p > 0.0)) throw std::invalid_argument("discrete: probabilities must be positive");
        if (!merged.empty() && v - merged.back().first < 1e-14) {
            merged.back().second += p;
        } else {
            merged.emplace_back(v, p);
        }
    }
    double total = 0.0;
    for (const auto& [v, p] : merged) total += p;
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("discrete: probabilities must sum to 1");

    auto impl = std::make_shared<Impl>();
    impl->family = DistFamily::discrete;
    impl->atoms = std::move(merged);
    impl->lower = impl->atoms.front().first;
    impl->upper = impl->atoms.back().first;
    impl->cone = infer_cone(impl->lower, impl->upper);
    impl->cum.reserve(impl->atoms.size());
    double c = 0.0;
    for (const auto& [v, p] : impl->atoms) {
        c += p;
        impl->cum.push_back(c);
    }
    impl->cum.back() = 1.0;
    return Distribution(std::move(impl));
}

DistFamily Distribution::family() const { return impl_->family; }
Cone Distribution::cone() const { return impl_->cone; }
double Distribution::lower() const { return impl_->lower; }
double Distribution::upper() const { return impl_->upper; }

double Distribution::survival(double x) const {
    const Impl& d = *impl_;
    switch (d.family) {
        case DistFamily::uniform: {
            if (x <= d.p1) return 1.0;
            if (x >= d.p2) return 0.0;
            return (d.p2 - x) / (d.p2 - d.p1);
        }
        case DistFamily::pareto:
            if (x <= d.p2) return 1.0;
            return std::pow(d.p2 / x, d.p1);
        case DistFamily::lognormal:
            if (x <= 0.0) return 1.0;
            return normal_sf((std::log(x) - d.p1) / d.p2);
        case DistFamily::discrete: {
            // P(X >= x): atoms with value >= x.
            auto it = std::lower_bound(d.atoms.begin(), d.atoms.end(), x,
                                       [](const auto& a, double v) { return a.first < v; });
            const auto idx = static_cast<std::size_t>(it - d.atoms.begin());
            if (idx == 0) return 1.0;
            return 1.0 - d.cum[idx - 1];
        }
        case DistFamily::negated:
            // P(-Y >= x) = P(Y <= -x)
            return Distribution(d.inner).cdf(-x);
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    const Impl& d = *impl_;
    switch (d.family) {
        case DistFamily::uniform: {
            if (x <= d.p1) return 0.0;
            if (x >= d.p2) return 1.0;
            return (x - d.p1) / (d.p2 - d.p1);
        }
        case DistFamily::pareto:
            if (x <= d.p2) return 0.0;
            return 1.0 - std::pow(d.p2 / x, d.p1);
        case DistFamily::lognormal:
            if (x <= 0.0) return 0.0;
            return 1.0 - normal_sf((std::log(x) - d.p1) / d.p2);
        case DistFamily::discrete: {
            // P(X <= x): atoms with value <= x.
            auto it = std::upper_bound(d.atoms.begin(), d.atoms.end(), x,
                                       [](double v, const auto& a) { return v < a.first; });
            const auto idx = static_cast<std::size_t>(it - d.atoms.begin());
            if (idx == 0) return 0.0;
            return d.cum[idx - 1];
        }
        case DistFamily::negated:
            // P(-Y <= x) = P(Y >= -x)
            return Distribution(d.inner).survival(-x);
    }
    return 0.0;
}

double Distribution::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile: p outside [0,1]");
    const Impl& d = *impl_;
    switch (d.family) {
        case DistFamily::uniform:
            return d.p1 + p * (d.p2 - d.p1);
        case DistFamily::pareto:
            if (p >= 1.0) return kInf;
            return d.p2 * std::pow(1.0 - p, -1.0 / d.p1);
        case DistFamily::lognormal:
            if (p <= 0.0) return 0.0;
            if (p >= 1.0) return kInf;
            return std::exp(d.p1 + d.p2 * inverse_normal_cdf(p));
        case DistFamily::discrete: {
            if (p <= 0.0) return d.atoms.front().first;
            auto it = std::lower_bound(d.cum.begin(), d.cum.end(), p - 1e-12);
            const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - d.cum.begin()),
                                                   d.atoms.size() - 1);
            return d.atoms[idx].first;
        }
        case DistFamily::negated:
            // Discrete laws are materialized on negation, so the inner law
            // here is continuous: q_{-Y}(p) = -q_Y(1-p).
            return -Distribution(d.inner).quantile(1.0 - p);
    }
    throw std::logic_error("quantile: unsupported family");
}

double Distribution::upper_quantile(double s) const {
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("upper_quantile: s outside [0,1]");
    const Impl& d = *impl_;
    switch (d.family) {
        case DistFamily::uniform:
            return d.p2 - s * (d.p2 - d.p1);
        case DistFamily::pareto:
            if (s <= 0.0) return kInf;
            return d.p2 * std::pow(s, -1.0 / d.p1);
        case DistFamily::lognormal:
            if (s <= 0.0) return kInf;
            return std::exp(d.p1 - d.p2 * inverse_normal_cdf(s));
        case DistFamily::discrete: {
            double acc = 0.0;
            for (std::size_t k = d.atoms.size(); k-- > 0;) {
                acc += d.atoms[k].second;
                if (acc >= s - 1e-15) return d.atoms[k].first;
            }
            return d.atoms.front().first;
        }
        case DistFamily::negated:
            return -Distribution(d.inner).lower_quantile(s);
    }
    throw std::logic_error("upper_quantile: unsupported family");
}

double Distribution::lower_quantile(double s) const {
    if (impl_->family == DistFamily::negated)
        return -Distribution(impl_->inner).upper_quantile(s);
    if (impl_->family == DistFamily::lognormal) {
        if (s <= 0.0) return 0.0;
        return std::exp(impl_->p1 + impl_->p2 * inverse_normal_cdf(s));
    }
    return quantile(s);
}

bool Distribution::is_discrete() const { return impl_->family == DistFamily::discrete; }

const std::vector<std::pair<double, double>>& Distribution::atoms() const {
    if (impl_->family == DistFamily::discrete) return impl_->atoms;
    throw std::logic_error("atoms: not a discrete law");
}

Distribution Distribution::negated() const {
    if (impl_->family == DistFamily::negated) return Distribution(impl_->inner);
    if (impl_->family == DistFamily::discrete) {
        // Materialize: atoms negate exactly, so the double negation
        // round-trips through the discrete constructor.
        std::vector<std::pair<double, double>> neg;
        neg.reserve(impl_->atoms.size());
        for (auto it = impl_->atoms.rbegin(); it != impl_->atoms.rend(); ++it)
            neg.emplace_back(-it->first, it->second);
        return Distribution::discrete(std::move(neg));
    }
    auto impl = std::make_shared<Impl>();
    impl->family = DistFamily::negated;
    impl->inner = impl_;
    impl->lower = -impl_->upper;
    impl->upper = -impl_->lower;
    impl->cone = flip(impl_->cone);
    return Distribution(std::move(impl));
}

Distribution Distribution::inner() const {
    if (impl_->family != DistFamily::negated) throw std::logic_error("inner: not a negated law");
    return Distribution(impl_->inner);
}

Distribution negate(const Distribution& d) { return d.negated(); }

}  // namespace riskconv
