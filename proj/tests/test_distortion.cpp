#include <cmath>
#include <random>

#include <doctest.h>

#include "riskconv/distortion.hpp"
#include "testutil.hpp"

using namespace riskconv;
using testutil::random_curve;

TEST_SUITE_BEGIN("distortion");

TEST_CASE("eval matches the family formulas") {
    CHECK(DistortionCurve::power(2.0)(0.5) == doctest::Approx(0.25));
    CHECK(DistortionCurve::identity()(0.73) == doctest::Approx(0.73));
    // 1 - (1-t)^beta at t = 0.5, cross-checked against the direct expression.
    CHECK(DistortionCurve::dual_power(0.3)(0.5) ==
          doctest::Approx(1.0 - std::pow(0.5, 0.3)).epsilon(1e-12));
    CHECK(DistortionCurve::dual_power(0.3)(0.5) == doctest::Approx(0.187748).epsilon(1e-5));
    CHECK(DistortionCurve::es_cap(0.2)(0.1) == doctest::Approx(0.5));
    CHECK(DistortionCurve::var_indicator(0.1)(0.1) == 0.0);
    CHECK(DistortionCurve::var_indicator(0.1)(0.100001) == 1.0);
    CHECK_THROWS_AS(DistortionCurve::power(2.0)(1.5), std::domain_error);
    CHECK_THROWS_AS(DistortionCurve::power(2.0)(-0.1), std::domain_error);
}

TEST_CASE("piecewise linear evaluation and clamping") {
    // (1.24 x - 0.24) v 0 as breakpoints.
    const auto h = DistortionCurve::piecewise_linear({{0.0, 0.0}, {0.24 / 1.24, 0.0}, {1.0, 1.0}});
    CHECK(h(0.1) == 0.0);
    CHECK(h(1.0) == doctest::Approx(1.0));
    CHECK(h(0.6) == doctest::Approx(1.24 * 0.6 - 0.24).epsilon(1e-12));
    CHECK(h.is_convex());
    CHECK(!h.is_concave());
    CHECK_THROWS_AS(DistortionCurve::piecewise_linear({{0.0, 0.5}, {1.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DistortionCurve::piecewise_linear({{0.1, 0.0}, {1.0, 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("dual transform") {
    CHECK(dual(DistortionCurve::power(2.0))(0.5) == doctest::Approx(0.75));
    CHECK(dual(DistortionCurve::identity())(0.31) == doctest::Approx(0.31));
    // dual of 1-(1-t)^0.3 is t^0.3, verified on a grid.
    const auto d = dual(DistortionCurve::dual_power(0.3));
    for (int k = 0; k <= 1000; ++k) {
        const double t = k / 1000.0;
        CHECK(d(t) == doctest::Approx(std::pow(t, 0.3)).epsilon(1e-12));
    }
    CHECK(d.family() == CurveFamily::power);
}

TEST_CASE("dual involution on random curves and grid points") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        const DistortionCurve h = random_curve(rng);
        const DistortionCurve hdd = dual(dual(h));
        for (int k = 0; k <= 100; ++k) {
            const double t = k / 100.0;
            REQUIRE(std::abs(hdd(t) - h(t)) <= 1e-12);
        }
    }
}

TEST_CASE("dual swaps convexity and concavity") {
    const auto h = DistortionCurve::power(3.0);
    CHECK(h.is_convex());
    CHECK(dual(h).is_concave());
    CHECK(!dual(h).is_convex());
    const auto e = DistortionCurve::es_cap(0.4);
    CHECK(e.is_concave());
    CHECK(dual(e).is_convex());
}

TEST_CASE("classify") {
    const ShapeReport p = classify(DistortionCurve::power(1.2));
    CHECK(p.increasing);
    CHECK(p.convex);
    CHECK(!p.concave);
    CHECK(p.continuous);
    CHECK(p.normalized);
    CHECK(!p.grid_conflict);

    const ShapeReport v = classify(DistortionCurve::var_indicator(0.1));
    CHECK(v.increasing);
    CHECK(!v.convex);
    CHECK(!v.concave);
    CHECK(!v.continuous);
    CHECK(v.normalized);

    const ShapeReport e = classify(DistortionCurve::es_cap(0.5));
    CHECK(e.increasing);
    CHECK(!e.convex);
    CHECK(e.concave);
    CHECK(e.continuous);
    CHECK(e.normalized);
}

TEST_CASE("membership of H implies endpoints and monotonicity") {
    std::mt19937 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const DistortionCurve h = random_curve(rng);
        if (!h.in_h_class()) continue;
        CHECK(h(0.0) == 0.0);
        CHECK(h(1.0) == doctest::Approx(1.0));
        double prev = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double y = h(k / 1000.0);
            REQUIRE(y >= prev - 1e-12);
            prev = y;
        }
    }
}

TEST_CASE("dually subadditive verdicts") {
    CHECK(is_dually_subadditive(DistortionCurve::es_cap(0.3)));
    CHECK(is_dually_subadditive(DistortionCurve::dual_power(2.0)));  // concave
    CHECK(!is_dually_subadditive(DistortionCurve::var_indicator(0.5)));
    CHECK_THROWS_AS(
        is_dually_subadditive(DistortionCurve::sampled(GridFunction({0.0, 0.7, 0.5, 0.9}))),
        std::invalid_argument);
}

TEST_CASE("concave members of H are dually subadditive") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(1.0, 5.0);
    for (int rep = 0; rep < 20; ++rep) {
        const DistortionCurve h =
            rep % 2 == 0 ? DistortionCurve::dual_power(u(rng)) : DistortionCurve::power(1.0 / u(rng));
        REQUIRE(classify(h).concave);
        REQUIRE(is_dually_subadditive(h));
    }
}

TEST_CASE("bernstein reproduces affine curves") {
    for (int k : {1, 2, 7, 32}) {
        const DistortionCurve b = bernstein(DistortionCurve::identity(), k);
        for (int j = 0; j <= 100; ++j) {
            const double t = j / 100.0;
            REQUIRE(b(t) == doctest::Approx(t).epsilon(1e-12));
        }
    }
}

TEST_CASE("bernstein of the square at order two") {
    // B_k(t^2) = t^2 + t(1-t)/k.
    const DistortionCurve b = bernstein(DistortionCurve::power(2.0), 2);
    CHECK(b(0.5) == doctest::Approx(0.375).epsilon(1e-12));
    for (int j = 0; j <= 10; ++j) {
        const double t = j / 10.0;
        CHECK(b(t) == doctest::Approx(t * t + t * (1.0 - t) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("bernstein error shrinks along doubling orders for a convex curve") {
    const DistortionCurve h = DistortionCurve::dual_power(0.3);
    auto sup_err = [&](int k) {
        const DistortionCurve b = bernstein(h, k);
        double e = 0.0;
        for (int j = 0; j <= 1000; ++j) {
            const double t = j / 1000.0;
            e = std::max(e, std::abs(b(t) - h(t)));
        }
        return e;
    };
    const double e16 = sup_err(16);
    const double e64 = sup_err(64);
    CHECK(e64 < e16);
}

TEST_CASE("bernstein preserves shape flags (grid differences)") {
    for (const DistortionCurve& h :
         {DistortionCurve::dual_power(0.3), DistortionCurve::power(2.5)}) {
        const DistortionCurve b = bernstein(h, 24);
        CHECK(b.is_increasing());
        CHECK(b.is_convex());
        const auto& vals = *b.as_piecewise_linear();
        for (std::size_t k = 0; k + 1 < vals.size(); ++k)
            REQUIRE(vals[k + 1].second - vals[k].second >= -1e-10);
        for (std::size_t k = 1; k + 1 < vals.size(); ++k)
            REQUIRE(vals[k + 1].second - 2 * vals[k].second + vals[k - 1].second >= -1e-10);
    }
}

TEST_CASE("bernstein rejects discontinuous curves") {
    CHECK_THROWS_AS(bernstein(DistortionCurve::var_indicator(0.2), 8), std::invalid_argument);
}

TEST_CASE("combine") {
    const auto mn =
        combine({DistortionCurve::dual_power(0.3), DistortionCurve::dual_power(0.6)},
                CombineMode::pointwise_min);
    const DistortionCurve d03 = DistortionCurve::dual_power(0.3);
    for (int j = 0; j <= 1000; ++j) {
        const double t = j / 1000.0;
        REQUIRE(mn(t) == doctest::Approx(d03(t)).epsilon(1e-12));
    }
    CHECK(mn.is_normalized());

    const auto same = combine({d03, d03}, CombineMode::pointwise_min);
    for (int j = 0; j <= 100; ++j) REQUIRE(same(j / 100.0) == doctest::Approx(d03(j / 100.0)));

    const auto mx = combine({DistortionCurve::identity(), DistortionCurve::identity()},
                            CombineMode::pointwise_max);
    CHECK(mx(0.42) == doctest::Approx(0.42));

    CHECK(attained_envelope({d03, DistortionCurve::dual_power(0.6)}, CombineMode::pointwise_min)
              .value() == 0);
    CHECK(!attained_envelope({DistortionCurve::power(2.0), DistortionCurve::dual_power(0.5)},
                             CombineMode::pointwise_min)
               .has_value());
}

TEST_CASE("grid function evaluation is exact at sample points") {
    GridFunction g({0.0, 0.3, 0.333, 0.9});
    CHECK(g(0.0) == 0.0);
    CHECK(g(1.0 / 3.0) == 0.3);
    CHECK(g(2.0 / 3.0) == 0.333);
    CHECK(g(1.0) == 0.9);
    CHECK(g.monotone());
    CHECK(g(0.5) == doctest::Approx(0.3 + (0.333 - 0.3) * 0.5).epsilon(1e-12));
}

TEST_SUITE_END();
