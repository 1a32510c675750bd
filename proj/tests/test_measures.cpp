#include <cmath>
#include <random>

#include <doctest.h>

#include "riskconv/measures.hpp"
#include "riskconv/numerics.hpp"
#include "testutil.hpp"

using namespace riskconv;

TEST_SUITE_BEGIN("measures");

namespace {
const Distribution kU01 = Distribution::uniform(0.0, 1.0);
}

TEST_CASE("riskmetric basics") {
    CHECK(riskmetric(DistortionCurve::identity(), kU01) == doctest::Approx(0.5).epsilon(1e-7));
    // closed form: int_0^1 (1 - x^0.3) dx = 1 - 1/1.3
    CHECK(riskmetric(DistortionCurve::dual_power(0.3), kU01) ==
          doctest::Approx(1.0 - 1.0 / 1.3).epsilon(1e-7));
    CHECK(riskmetric(DistortionCurve::dual_power(0.3), negate(kU01)) ==
          doctest::Approx(-1.0 / 1.3).epsilon(1e-7));
}

TEST_CASE("riskmetric on exotic but exact cases") {
    // Pareto mean: alpha theta / (alpha - 1) = 3 for (3, 2).
    CHECK(riskmetric(DistortionCurve::identity(), Distribution::pareto(3.0, 2.0)) ==
          doctest::Approx(3.0).epsilon(1e-6));
    // LogNormal mean e^{1/2}.
    CHECK(riskmetric(DistortionCurve::identity(), Distribution::lognormal(0.0, 1.0)) ==
          doctest::Approx(std::exp(0.5)).epsilon(1e-6));
    // VaR-type curve integrates to the quantile.
    CHECK(riskmetric(DistortionCurve::var_indicator(0.3), kU01) ==
          doctest::Approx(0.7).epsilon(1e-7));
}

TEST_CASE("riskmetric divergence detection") {
    // h(S(x)) ~ x^{-0.9} for t^{0.3} over Pareto(3): not integrable.
    CHECK_THROWS_AS(riskmetric(DistortionCurve::power(0.3), Distribution::pareto(3.0, 2.0)),
                    DivergenceError);
    // The dual-power complement has the same fat lower tail on -X.
    CHECK_THROWS_AS(
        riskmetric(DistortionCurve::dual_power(0.3), negate(Distribution::pareto(3.0, 2.0))),
        DivergenceError);
    // t^{0.5} over Pareto(3) decays like x^{-1.5}: fine.
    CHECK_NOTHROW(riskmetric(DistortionCurve::power(0.5), Distribution::pareto(3.0, 2.0)));
}

TEST_CASE("var") {
    CHECK(var(kU01, 0.05) == doctest::Approx(0.95));
    CHECK(var(Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}}), 0.25) == 1.0);
    CHECK(var(kU01, 0.0) == doctest::Approx(1.0));
    CHECK(var(Distribution::pareto(3.0, 2.0), 0.05) ==
          doctest::Approx(2.0 * std::pow(0.05, -1.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(var(kU01, 1.0), std::domain_error);
}

TEST_CASE("es") {
    CHECK(es(kU01, 0.5) == doctest::Approx(0.75).epsilon(1e-7));
    CHECK(es(Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}}), 0.25) == doctest::Approx(1.0));
    // Quantile-integral route agrees with the capped-curve riskmetric route.
    for (const Distribution& d :
         {kU01, Distribution::pareto(3.0, 2.0), Distribution::lognormal(0.0, 1.0)}) {
        for (double beta : {0.1, 0.4, 0.8}) {
            CHECK(es(d, beta) ==
                  doctest::Approx(riskmetric(DistortionCurve::es_cap(beta), d)).epsilon(1e-6));
        }
    }
    CHECK_THROWS_AS(es(kU01, 0.0), std::domain_error);
}

TEST_CASE("negate involution and support") {
    const Distribution n = negate(kU01);
    CHECK(n.lower() == doctest::Approx(-1.0));
    CHECK(n.upper() == doctest::Approx(0.0));
    CHECK(n.cone() == Cone::nonpositive);
    const Distribution nn = negate(n);
    for (int k = 1; k < 100; ++k) {
        const double p = k / 100.0;
        REQUIRE(nn.quantile(p) == doctest::Approx(kU01.quantile(p)).epsilon(1e-12));
    }
    // Discrete laws materialize and round-trip exactly.
    const Distribution d = Distribution::discrete({{-1.0, 0.25}, {2.0, 0.75}});
    const Distribution dd = negate(negate(d));
    CHECK(dd.atoms() == d.atoms());
}

TEST_CASE("dual identity as an oracle: rho_h(-X) = -rho_{dual h}(X)") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 25; ++rep) {
        const DistortionCurve h = testutil::random_curve(rng);
        const Distribution d = rep % 2 == 0 ? kU01 : testutil::random_discrete(rng);
        const double lhs = riskmetric(h, negate(d));
        const double rhs = -riskmetric(dual(h), d);
        REQUIRE(testutil::near(lhs, rhs, 1e-6));
    }
}

TEST_CASE("translation and homogeneity surrogates") {
    std::mt19937 rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        const DistortionCurve h = testutil::random_curve(rng);
        if (!h.is_normalized()) continue;
        const double base = riskmetric(h, kU01);
        for (double c : {-0.5, 0.25, 2.0}) {
            const double shifted = riskmetric(h, Distribution::uniform(c, 1.0 + c));
            REQUIRE(testutil::near(shifted, base + c, 1e-6));
        }
        for (double lam : {0.5, 2.0, 10.0}) {
            const double scaled = riskmetric(h, Distribution::uniform(0.0, lam));
            REQUIRE(testutil::near(scaled, lam * base, 1e-6 * std::max(1.0, lam)));
        }
    }
}

TEST_CASE("monotone distortion dominance") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double b = u(rng);
        const DistortionCurve lo = DistortionCurve::dual_power(b);
        const DistortionCurve hi = DistortionCurve::dual_power(b + 0.5);  // pointwise larger
        for (const Distribution& d : {kU01, testutil::random_discrete(rng)}) {
            REQUIRE(riskmetric(lo, d) <= riskmetric(hi, d) + 1e-6);
        }
    }
}

TEST_CASE("discrete exactness: finite sum agrees with a quadrature surrogate") {
    // Approximate the two-point law by a narrow uniform mixture evaluated
    // through the continuous path and compare with the exact sum.
    const Distribution d = Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}});
    const DistortionCurve h = DistortionCurve::dual_power(0.47);
    const double exact = riskmetric(h, d);
    // S(x) = 0.5 on (0, 1]: integral is h(0.5) * 1.
    CHECK(exact == doctest::Approx(h(0.5)).epsilon(1e-12));
    // Shifted-and-negated variants stay exact.
    const double neg = riskmetric(h, negate(d));
    CHECK(neg == doctest::Approx(-(1.0 - h(0.5))).epsilon(1e-12));
}

TEST_CASE("cone declarations") {
    CHECK(kU01.cone() == Cone::nonnegative);
    CHECK(Distribution::uniform(-2.0, -1.0).cone() == Cone::nonpositive);
    CHECK(Distribution::uniform(-1.0, 1.0).cone() == Cone::general);
    CHECK(Distribution::pareto(3.0, 2.0).cone() == Cone::nonnegative);
    CHECK_THROWS_AS(Distribution::discrete({{0.0, 0.5}, {1.0, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::pareto(0.9, 2.0), std::invalid_argument);
}

TEST_SUITE_END();
