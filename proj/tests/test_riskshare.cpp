#include <cmath>
#include <random>

#include <doctest.h>

#include "riskconv/measures.hpp"
#include "riskconv/numerics.hpp"
#include "riskconv/riskshare.hpp"
#include "testutil.hpp"

using namespace riskconv;

TEST_SUITE_BEGIN("riskshare");

namespace {
const Distribution kU01 = Distribution::uniform(0.0, 1.0);
const std::vector<DistortionCurve> kPair{DistortionCurve::dual_power(0.3),
                                         DistortionCurve::dual_power(0.6)};
}  // namespace

TEST_CASE("comonotonic value is rho of the pointwise min") {
    const ShareResult r = comonotonic_infconv(kPair, kU01);
    CHECK(r.value == doctest::Approx(1.0 - 1.0 / 1.3).epsilon(1e-7));
    REQUIRE(r.allocation.has_value());
    CHECK(std::get<SingleAgent>(*r.allocation).index == 0);

    // Expected-shortfall family: the largest level absorbs everything.
    const std::vector<DistortionCurve> es_group{DistortionCurve::es_cap(0.1),
                                                DistortionCurve::es_cap(0.2)};
    for (const Distribution& d : {kU01, Distribution::discrete({{0.0, 0.5}, {2.0, 0.5}})}) {
        const ShareResult e = comonotonic_infconv(es_group, d);
        CHECK(e.regime == ShareRegime::es_family);
        CHECK(e.value == doctest::Approx(es(d, 0.2)).epsilon(1e-6));
    }

    const ShareResult id =
        comonotonic_infconv({DistortionCurve::identity(), DistortionCurve::identity()}, kU01);
    CHECK(id.value == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("counter-monotonic dispatch: convex pair on both signs") {
    const ShareResult pos = countermonotonic_infconv(kPair, kU01);
    CHECK(pos.regime == ShareRegime::all_convex);
    CHECK(pos.value == doctest::Approx(0.210367).epsilon(2e-5));
    REQUIRE(pos.allocation.has_value());
    CHECK(std::holds_alternative<JackpotAllocation>(*pos.allocation));

    const ShareResult neg = countermonotonic_infconv(kPair, negate(kU01));
    CHECK(neg.value == doctest::Approx(-1.048583).epsilon(2e-5));

    // Reference-table rows on the heavy-tailed laws (values verified by an
    // independent quadrature; see the acceptance suite for the reference
    // comparison).
    CHECK(countermonotonic_infconv(kPair, Distribution::pareto(3.0, 2.0)).value ==
          doctest::Approx(1.358574).epsilon(1e-4));
    CHECK(countermonotonic_infconv(kPair, Distribution::lognormal(0.0, 1.0)).value ==
          doctest::Approx(0.632570).epsilon(1e-4));
}

TEST_CASE("counter-monotonic dispatch: quantile family") {
    const ShareResult r = countermonotonic_infconv(
        {DistortionCurve::var_indicator(0.1), DistortionCurve::var_indicator(0.2)}, kU01);
    CHECK(r.regime == ShareRegime::var_family);
    CHECK(r.value == doctest::Approx(0.7).epsilon(1e-12));
    CHECK_THROWS_AS(
        countermonotonic_infconv(
            {DistortionCurve::var_indicator(0.6), DistortionCurve::var_indicator(0.5)}, kU01),
        std::domain_error);
}

TEST_CASE("counter-monotonic dispatch: attained concave minimum takes all") {
    const std::vector<DistortionCurve> grp{DistortionCurve::dual_power(2.0),
                                           DistortionCurve::dual_power(3.0)};
    const ShareResult r = countermonotonic_infconv(grp, kU01);
    CHECK(r.regime == ShareRegime::all_concave_with_min);
    REQUIRE(r.allocation.has_value());
    CHECK(std::get<SingleAgent>(*r.allocation).index == 0);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
}

TEST_CASE("counter-monotonic dispatch: generic bracket for mixed shapes") {
    const std::vector<DistortionCurve> mixed{DistortionCurve::power(2.0),
                                             DistortionCurve::dual_power(2.0)};
    const ShareResult r = countermonotonic_infconv(mixed, kU01);
    CHECK(r.regime == ShareRegime::generic_bound);
    REQUIRE(r.lower_bound.has_value());
    REQUIRE(r.upper_bound.has_value());
    CHECK(*r.lower_bound <= *r.upper_bound + 1e-9);
    CHECK(!r.allocation.has_value());
}

TEST_CASE("unconstrained dispatch") {
    // Concave pair: equals the comonotonic value.
    const std::vector<DistortionCurve> grp{DistortionCurve::dual_power(2.0),
                                           DistortionCurve::dual_power(3.0)};
    const ShareResult c = unconstrained_infconv(grp, kU01);
    CHECK(c.value == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
    CHECK(c.regime == ShareRegime::all_concave_with_min);

    // Convex pair on a unit constant: the probability-sharing value.
    const ShareResult k = unconstrained_infconv(
        {DistortionCurve::power(1.2), DistortionCurve::power(1.4)},
        Distribution::discrete({{1.0, 1.0}}));
    CHECK(k.value == doctest::Approx(0.8141).epsilon(5e-4 / 0.8));
    CHECK(k.regime == ShareRegime::all_convex);

    const ShareResult id =
        unconstrained_infconv({DistortionCurve::identity(), DistortionCurve::identity()},
                              Distribution::uniform(-1.0, 1.0));
    CHECK(id.value == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("sandwich across regimes") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 12; ++rep) {
        std::vector<DistortionCurve> hs;
        const int mode = rep % 3;
        const std::size_t n = 2 + rep % 2;
        for (std::size_t i = 0; i < n; ++i) {
            if (mode == 0) hs.push_back(DistortionCurve::power(1.0 + 3.0 * u(rng)));
            if (mode == 1) hs.push_back(DistortionCurve::dual_power(1.0 + 3.0 * u(rng)));
            if (mode == 2) hs.push_back(DistortionCurve::es_cap(0.1 + 0.8 * u(rng)));
        }
        const Distribution d = rep % 2 == 0 ? kU01 : testutil::random_discrete(rng);
        const ShareResult un = unconstrained_infconv(hs, d);
        const ShareResult co = comonotonic_infconv(hs, d);
        const ShareResult cn = countermonotonic_infconv(hs, d);
        if (un.regime != ShareRegime::generic_bound) {
            REQUIRE(un.value <= co.value + 1e-6);
            if (cn.regime != ShareRegime::generic_bound) REQUIRE(un.value <= cn.value + 1e-6);
        }
        if (mode == 0) {
            // all convex: unconstrained equals counter-monotonic.
            REQUIRE(testutil::near(un.value, cn.value, 1e-6));
        }
        if (mode == 1 || mode == 2) {
            // concave family with attained min: unconstrained equals
            // comonotonic and counter-monotonic is no smaller.
            REQUIRE(testutil::near(un.value, co.value, 1e-6));
            REQUIRE(cn.value >= co.value - 1e-6);
        }
    }
}

TEST_CASE("expected-shortfall family: all three agree") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int rep = 0; rep < 8; ++rep) {
        std::vector<DistortionCurve> hs;
        double bmax = 0.0;
        for (int i = 0; i < 2 + rep % 3; ++i) {
            const double b = u(rng);
            bmax = std::max(bmax, b);
            hs.push_back(DistortionCurve::es_cap(b));
        }
        const Distribution d = rep % 2 == 0 ? kU01 : testutil::random_discrete(rng);
        const double ref = es(d, bmax);
        REQUIRE(testutil::near(unconstrained_infconv(hs, d).value, ref, 1e-6));
        REQUIRE(testutil::near(comonotonic_infconv(hs, d).value, ref, 1e-6));
        REQUIRE(testutil::near(countermonotonic_infconv(hs, d).value, ref, 1e-6));
    }
}

TEST_CASE("allocation consistency") {
    // Jackpot pieces reproduce the counter-monotonic value.
    const ShareResult pos = countermonotonic_infconv(kPair, kU01);
    const auto& ja = std::get<JackpotAllocation>(*pos.allocation);
    CHECK(allocation_total_risk(kPair, ja, kU01) == doctest::Approx(pos.value).epsilon(1e-4));

    // Discrete law: exact sums.
    const Distribution d = Distribution::discrete({{0.5, 0.25}, {1.0, 0.5}, {2.0, 0.25}});
    const ShareResult dr = countermonotonic_infconv(kPair, d);
    const auto& jd = std::get<JackpotAllocation>(*dr.allocation);
    CHECK(allocation_total_risk(kPair, jd, d) == doctest::Approx(dr.value).epsilon(1e-4));

    // Scapegoat side through the negated law.
    const Distribution nu = negate(kU01);
    const ShareResult neg = countermonotonic_infconv(kPair, nu);
    const auto& jn = std::get<JackpotAllocation>(*neg.allocation);
    CHECK(allocation_total_risk(kPair, jn, nu) == doctest::Approx(neg.value).epsilon(1e-4));
}

TEST_CASE("divergence certificate") {
    const std::vector<DistortionCurve> grp{DistortionCurve::power(2.0),
                                           DistortionCurve::power(2.0)};
    const auto [alloc, value] = divergence_certificate(grp, 10.0);
    CHECK(value == doctest::Approx(-10.0).epsilon(1e-12));
    CHECK(pairwise_countermonotonic_check(alloc));
    // Aggregate is the constant zero.
    for (double v : alloc.aggregate()) CHECK(v == doctest::Approx(0.0));

    // The witness value matches the riskmetric of each piece's two-point law
    // under the pointwise-max curve.
    const Distribution piece =
        Distribution::discrete({{-10.0, 0.5}, {10.0, 0.5}});
    CHECK(2.0 * riskmetric(DistortionCurve::power(2.0), piece) ==
          doctest::Approx(value).epsilon(1e-12));

    CHECK(divergence_certificate(grp, 0.0).second == doctest::Approx(0.0));
    CHECK(divergence_certificate(grp, 100.0).second / divergence_certificate(grp, 10.0).second ==
          doctest::Approx(10.0).epsilon(1e-12));

    CHECK_THROWS_AS(divergence_certificate({DistortionCurve::identity()}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(divergence_certificate({DistortionCurve::dual_power(2.0)}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("heavy-tail divergence is propagated") {
    CHECK_THROWS_AS(countermonotonic_infconv(kPair, negate(Distribution::pareto(3.0, 2.0))),
                    DivergenceError);
    CHECK_THROWS_AS(comonotonic_infconv(kPair, negate(Distribution::pareto(3.0, 2.0))),
                    DivergenceError);
}

TEST_SUITE_END();
