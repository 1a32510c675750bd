#include "riskconv/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "riskconv/numerics.hpp"

namespace riskconv {

namespace {

constexpr double kQuadTol = 1e-8;

double discrete_riskmetric(const std::function<double(double)>& curve, double h1,
                           const std::vector<std::pair<double, double>>& atoms) {
    const std::size_t m = atoms.size();
    std::vector<double> tail(m, 0.0);  // tail[k] = P(X >= value_k)
    double c = 0.0;
    for (std::size_t k = m; k-- > 0;) {
        c += atoms[k].second;
        tail[k] = c;
    }
    tail[0] = 1.0;

    double total = 0.0;
    if (atoms.front().first > 0.0) total += atoms.front().first * h1;  // [0, v_1], S = 1
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double a = atoms[k].first, b = atoms[k + 1].first;
        const double s = tail[k + 1];  // S on (v_k, v_{k+1}]
        const double pos_len = std::max(b, 0.0) - std::max(a, 0.0);
        if (pos_len > 0.0) total += pos_len * curve(s);
        const double neg_len = std::min(b, 0.0) - std::min(a, 0.0);
        if (neg_len > 0.0) total += neg_len * (curve(s) - h1);
    }
    if (atoms.back().first < 0.0) total += atoms.back().first * h1;  // (v_m, 0], S = 0
    return total;
}

struct TailResult {
    double x_cut;      // |x| coordinate to integrate up to
    double remainder;  // signed power-law remainder estimate beyond x_cut
};

// Decay analysis of an integrand along the tail parameterized by survival
// coordinate s -> 0 with |x| = coord_at(s) -> inf. Deepens the truncation
// until the estimated remainder is immaterial; throws when the local tail
// exponent cannot give a convergent integral.
TailResult analyze_tail(const std::function<double(double)>& value_at,
                        const std::function<double(double)>& coord_at, const char* side) {
    double s_cut = 1e-10;
    for (;;) {
        const double s_mid = s_cut * 1e2;
        const double f_mid = value_at(s_mid);
        const double f_cut = value_at(s_cut);
        const double x_mid = coord_at(s_mid);
        const double x_cut = coord_at(s_cut);
        if (std::abs(f_cut) <= 1e-300 || std::abs(f_mid) <= 1e-300) return {x_cut, 0.0};
        const double p = std::log(std::abs(f_cut / f_mid)) / std::log(x_cut / x_mid);
        if (p > -1.05) {
            throw DivergenceError(std::string("riskmetric: ") + side +
                                  " tail integral diverges (tail exponent " +
                                  std::to_string(p) + ")");
        }
        const double rem = f_cut * x_cut / (-1.0 - p);
        if (std::abs(rem) < 1e-9 || s_cut <= 1e-16) return {x_cut, rem};
        s_cut *= 1e-3;
    }
}

}  // namespace

double riskmetric_fn(const std::function<double(double)>& curve, double total_mass,
                     const Distribution& d, const std::vector<double>& kinks,
                     const std::function<double(double)>& complement) {
    if (d.is_discrete()) return discrete_riskmetric(curve, total_mass, d.atoms());

    const double lo = d.lower();
    const double hi = d.upper();
    const double h1 = total_mass;
    double total = 0.0;

    auto kink_pullbacks = [&](double a, double b) {
        std::vector<double> pts;
        for (double t : kinks) {
            if (t <= 0.0 || t >= 1.0) continue;
            const double x = d.quantile(1.0 - t);
            if (x > a && x < b) pts.push_back(x);
        }
        return pts;
    };

    // Positive part: int_0^inf curve(S(x)) dx.
    if (hi > 0.0) {
        const double a = std::max(lo, 0.0);
        if (lo > 0.0) total += lo * h1;  // S = 1 on [0, lo]
        double b = hi;
        double remainder = 0.0;
        if (std::isinf(hi)) {
            const TailResult t =
                analyze_tail([&](double s) { return curve(s); },
                             [&](double s) { return d.upper_quantile(s); }, "upper");
            b = t.x_cut;
            remainder = t.remainder;
        }
        total += adaptive_simpson_split([&](double x) { return curve(d.survival(x)); }, a, b,
                                        kink_pullbacks(a, b), kQuadTol);
        total += remainder;
    }

    // Negative part: int_{-inf}^0 (curve(S(x)) - h(1)) dx, evaluated as
    // -comp(P(X <= x)) so the deep lower tail never forms 1 - S with S
    // rounded to 1.
    if (lo < 0.0) {
        const auto comp = complement
                              ? complement
                              : std::function<double(double)>(
                                    [&](double q) { return h1 - curve(1.0 - q); });
        const double b = std::min(hi, 0.0);
        if (hi < 0.0) total += hi * h1;  // integrand is -h(1) on (hi, 0]
        double a = lo;
        double remainder = 0.0;
        if (std::isinf(lo)) {
            const TailResult t =
                analyze_tail([&](double s) { return comp(s); },
                             [&](double s) { return std::abs(d.lower_quantile(s)); }, "lower");
            a = -t.x_cut;
            remainder = -t.remainder;
        }
        total += adaptive_simpson_split([&](double x) { return -comp(d.cdf(x)); }, a, b,
                                        kink_pullbacks(a, b), kQuadTol);
        total += remainder;
    }
    return total;
}

double riskmetric(const DistortionCurve& h, const Distribution& d) {
    const DistortionCurve hd = dual(h);
    return riskmetric_fn([&](double t) { return h(t); }, h.total_mass(), d,
                         h.interior_breakpoints(), [&](double q) { return hd(q); });
}

double var(const Distribution& d, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("var: alpha outside [0,1)");
    return d.quantile(1.0 - alpha);
}

double es(const Distribution& d, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("es: beta outside (0,1)");
    if (d.is_discrete()) {
        double rem = beta, acc = 0.0;
        const auto& atoms = d.atoms();
        for (std::size_t k = atoms.size(); k-- > 0 && rem > 0.0;) {
            const double take = std::min(rem, atoms[k].second);
            acc += take * atoms[k].first;
            rem -= take;
        }
        return acc / beta;
    }
    if (std::isinf(d.upper())) {
        // The quantile must grow slower than gamma^(-1) for a finite tail mean.
        const double q1 = d.upper_quantile(1e-6), q2 = d.upper_quantile(1e-9);
        const double growth = std::log(q2 / q1) / std::log(1e3);
        if (growth >= 0.95) throw DivergenceError("es: tail mean diverges");
    }
    const double g_min = 1e-12;
    const double val = adaptive_simpson([&](double g) { return d.upper_quantile(g); }, g_min,
                                        beta, kQuadTol);
    return val / beta;
}

}  // namespace riskconv
