// SPDX-License-Identifier: Apache-2.0
#include "pilotplan/oracle.hpp"

#include <algorithm>
#include <doctest.h>

using namespace pilotplan;

TEST_CASE("enumeration agrees with the independent recurrence") {
    for (std::int64_t cells : {9, 27}) {
        for (std::int64_t users = 1; users <= (cells == 9 ? 4 : 3); ++users) {
            CHECK(static_cast<std::int64_t>(
                      oracle::enumerate_valid(cells, users).size()) ==
                  oracle::count_valid(cells, users));
            for (std::int64_t n = users; n <= cells * users / 3; n += 2)
                CHECK(static_cast<std::int64_t>(
                          oracle::enumerate_valid(cells, users, n).size()) ==
                      oracle::count_valid(cells, users, n));
        }
    }
}

TEST_CASE("every enumerated vector is valid and none is missed") {
    const auto all = oracle::enumerate_valid(9, 2);
    for (const PilotVector& p : all) CHECK(is_valid(p));
    // Spot witnesses the generator must produce.
    const PilotVector full{{2, 0}, 2, 9};
    const PilotVector saturated{{0, 6}, 2, 9};
    CHECK(std::count(all.begin(), all.end(), full) == 1);
    CHECK(std::count(all.begin(), all.end(), saturated) == 1);
}

TEST_CASE("tractability guard") {
    CHECK_THROWS_AS(oracle::enumerate_valid(81, 2), InvalidParameter);
    CHECK_THROWS_AS(oracle::enumerate_valid(9, 7), InvalidParameter);
}

TEST_CASE("fixed-length search certifies the closed form") {
    const DepthRates linear = linear_rate_model(2.0, 6.0, 2);
    for (std::int64_t users = 1; users <= 3; ++users) {
        for (std::int64_t n = users; n <= 9 * users / 3; n += 2) {
            const auto report = oracle::brute_fixed_length(n, users, 9, linear);
            CHECK(report.agrees);
            CHECK(report.candidates > 0);
            CHECK(report.best_value >= 0.0);
        }
    }
}

TEST_CASE("pair search certifies the split rule and its tie set") {
    const DepthRates linear = linear_rate_model(2.0, 6.0, 3);
    const TwoGroupConfig cfg =
        TwoGroupConfig::make(27, 4, Rational(1, 2), Rational(3, 4));
    for (std::int64_t total = 4; total <= 36; total += 2) {
        const auto report = oracle::brute_two_group(total, cfg, linear);
        CHECK(report.agrees);
        std::vector<std::int64_t> expected;
        for (std::int64_t t = rho(total, cfg); t <= mu(total, cfg); t += 2)
            expected.push_back(t);
        CHECK(report.witness_splits == expected);
    }
}

TEST_CASE("coherence-time search certifies the threshold rule") {
    const DepthRates linear = linear_rate_model(2.0, 6.0, 2);
    const TwoGroupConfig cfg =
        TwoGroupConfig::make(9, 2, Rational(1, 2), Rational(7, 10));
    for (double n_coh : {2.5, 5.0, 11.0, 25.0, 60.0}) {
        const auto report = oracle::brute_ncoh(n_coh, cfg, linear);
        CHECK(report.agrees);
    }
}
