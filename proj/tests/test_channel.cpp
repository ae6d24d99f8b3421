// SPDX-License-Identifier: Apache-2.0
#include "pilotplan/channel.hpp"

#include <cmath>
#include <doctest.h>
#include <vector>

using namespace pilotplan;

TEST_CASE("slow fading law") {
    CHECK(slow_fading(2.0, 3.7) == doctest::Approx(std::pow(2.0, -3.7)));
    CHECK(slow_fading(1.0, 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(slow_fading(0.0, 3.7), InvalidParameter);
    CHECK_THROWS_AS(slow_fading(-1.0, 3.7), InvalidParameter);
}

TEST_CASE("saturated rate") {
    const std::vector<double> one{1.0};
    CHECK(asymptotic_rate(1.0, one) == doctest::Approx(1.0));
    // Invariant under common scaling of all fading factors.
    const std::vector<double> some{0.3, 0.05, 0.8};
    std::vector<double> scaled;
    for (double b : some) scaled.push_back(7.5 * b);
    CHECK(asymptotic_rate(0.6, some) ==
          doctest::Approx(asymptotic_rate(7.5 * 0.6, scaled)).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_rate(1.0, std::vector<double>{}), MonopolyError);
    CHECK_THROWS_AS(asymptotic_rate(0.0, one), InvalidParameter);
}

TEST_CASE("linear rate model") {
    const DepthRates r = linear_rate_model(2.0, 6.0, 4);
    CHECK(r.rates == std::vector<double>{2.0, 8.0, 14.0, 20.0});
    CHECK(r.std_errors == std::vector<double>(4, 0.0));
    CHECK(r.provenance.kind == "linear");
    CHECK_THROWS_AS(linear_rate_model(2.0, 0.0, 4), InvalidParameter);
    CHECK_THROWS_AS(linear_rate_model(2.0, 6.0, 1), InvalidParameter);
}

TEST_CASE("estimator parameter validation") {
    const CellGrid grid(2, 500.0, 0.14);
    CHECK_THROWS_AS(estimate_depth_rates(grid, {.gamma = 1.5}), InvalidParameter);
    CHECK_THROWS_AS(estimate_depth_rates(grid, {.gamma = 3.7, .trials = 0}),
                    InvalidParameter);
}

TEST_CASE("estimates are deterministic and worker-count independent") {
    const CellGrid grid(2, 500.0, 0.14);
    const ChannelParams one{.gamma = 3.7, .trials = 2000, .seed = 11, .workers = 1};
    const ChannelParams four{.gamma = 3.7, .trials = 2000, .seed = 11, .workers = 4};
    const DepthRates a = estimate_depth_rates(grid, one);
    const DepthRates b = estimate_depth_rates(grid, four);
    const DepthRates c = estimate_depth_rates(grid, one);
    CHECK(a.rates == b.rates);
    CHECK(a.rates == c.rates);
    CHECK(a.std_errors == b.std_errors);

    const ChannelParams other{.gamma = 3.7, .trials = 2000, .seed = 12};
    CHECK(estimate_depth_rates(grid, other).rates != a.rates);
}

TEST_CASE("estimates do not depend on the cell radius") {
    const ChannelParams params{.gamma = 3.7, .trials = 2000, .seed = 5};
    const DepthRates small = estimate_depth_rates(CellGrid(2, 100.0, 0.14), params);
    const DepthRates large = estimate_depth_rates(CellGrid(2, 1000.0, 0.14), params);
    CHECK(small.rates == large.rates);
}

TEST_CASE("deeper sharing levels earn strictly higher rates") {
    const CellGrid grid(3, 500.0, 0.14);
    const DepthRates r =
        estimate_depth_rates(grid, {.gamma = 3.7, .trials = 4000, .seed = 1});
    REQUIRE(r.rates.size() == 3);
    CHECK(r.rates[0] < r.rates[1]);
    CHECK(r.rates[1] < r.rates[2]);
    for (double se : r.std_errors) CHECK(se > 0.0);
    CHECK(r.provenance.kind == "monte-carlo");
    CHECK(r.provenance.trials == 4000);
}
