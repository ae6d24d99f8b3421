// SPDX-License-Identifier: Apache-2.0
#include "pilotplan.h"

#include <doctest.h>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

std::string take(char* text) {
    std::string out = text ? text : "";
    pp_string_free(text);
    return out;
}

constexpr const char* kTwoGroup =
    R"({"L": 9, "K": 2, "alpha": "1/2", "omega": "7/10"})";
constexpr const char* kThreeGroup =
    R"({"L": 27, "K": 10,
        "groups": [{"alpha": "1/5", "omega": "1/2"},
                   {"alpha": "3/10", "omega": "3/10"},
                   {"alpha": "1/2", "omega": "1/5"}],
        "linear_increments": true})";

}  // namespace

TEST_CASE("linear rate table round-trips through JSON") {
    pp_rates* rates = nullptr;
    REQUIRE(pp_rates_linear(2.0, 6.0, 4, &rates) == PP_OK);
    char* text = nullptr;
    REQUIRE(pp_rates_to_json(rates, &text) == PP_OK);
    const std::string first = take(text);

    pp_rates* reloaded = nullptr;
    REQUIRE(pp_rates_from_json(first.c_str(), &reloaded) == PP_OK);
    REQUIRE(pp_rates_to_json(reloaded, &text) == PP_OK);
    CHECK(take(text) == first);

    const json j = json::parse(first);
    CHECK(j.at("kind") == "linear");
    CHECK(j.at("depths").size() == 4);
    pp_rates_free(rates);
    pp_rates_free(reloaded);
}

TEST_CASE("monte-carlo table is reproducible through the C surface") {
    pp_rates* a = nullptr;
    pp_rates* b = nullptr;
    REQUIRE(pp_rates_estimate(2, 500.0, 0.14, 3.7, 1000, 9, 1, &a) == PP_OK);
    REQUIRE(pp_rates_estimate(2, 250.0, 0.14, 3.7, 1000, 9, 3, &b) == PP_OK);
    char* ta = nullptr;
    char* tb = nullptr;
    REQUIRE(pp_rates_to_json(a, &ta) == PP_OK);
    REQUIRE(pp_rates_to_json(b, &tb) == PP_OK);
    const json ja = json::parse(take(ta));
    const json jb = json::parse(take(tb));
    // Depth rates agree bit-for-bit across radius and worker count.
    CHECK(ja.at("depths") == jb.at("depths"));
    pp_rates_free(a);
    pp_rates_free(b);
}

TEST_CASE("two-group optimization through the C surface") {
    pp_rates* rates = nullptr;
    REQUIRE(pp_rates_linear(2.0, 6.0, 2, &rates) == PP_OK);
    char* text = nullptr;
    REQUIRE(pp_optimize(kTwoGroup, rates, 40.0, &text) == PP_OK);
    const json sol = json::parse(take(text));
    CHECK(sol.at("feasible") == true);
    CHECK(sol.at("total").get<int>() >= 2);
    CHECK(sol.at("splits").size() == 2);
    CHECK(sol.at("vectors").size() == 2);
    pp_rates_free(rates);
}

TEST_CASE("multi-group optimization and sweep through the C surface") {
    pp_rates* rates = nullptr;
    REQUIRE(pp_rates_linear(2.0, 6.0, 3, &rates) == PP_OK);
    char* text = nullptr;
    REQUIRE(pp_optimize(kThreeGroup, rates, 500.0, &text) == PP_OK);
    const json sol = json::parse(take(text));
    CHECK(sol.at("splits").size() == 3);

    REQUIRE(pp_sweep(kThreeGroup, rates, 20.0, 100.0, 20.0, 1, &text) == PP_OK);
    const std::string csv = take(text);
    CHECK(csv.rfind("n_coh,total_pilots,pilots_g1", 0) == 0);
    pp_rates_free(rates);
}

TEST_CASE("error codes and messages") {
    pp_rates* rates = nullptr;
    REQUIRE(pp_rates_linear(2.0, 6.0, 2, &rates) == PP_OK);
    char* text = nullptr;
    CHECK(pp_optimize("{not json", rates, 40.0, &text) == PP_ERR_PARSE);
    CHECK(pp_optimize(R"({"L":9,"K":2,"alpha":"1/3","omega":"7/10"})", rates,
                      40.0, &text) == PP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(pp_last_error()).size() > 0);
    CHECK(pp_optimize(nullptr, rates, 40.0, &text) == PP_ERR_INVALID_ARGUMENT);
    pp_rates* bad = nullptr;
    CHECK(pp_rates_linear(2.0, -1.0, 2, &bad) == PP_ERR_INVALID_ARGUMENT);
    CHECK(pp_rates_estimate(1, 500.0, 0.14, 3.7, 10, 1, 1, &bad) ==
          PP_ERR_INVALID_ARGUMENT);
    int passed = 0;
    CHECK(pp_reproduce("table9", nullptr, &text, &passed) ==
          PP_ERR_INVALID_ARGUMENT);
    pp_rates_free(rates);
}

TEST_CASE("embedded three-group schedule check passes") {
    char* text = nullptr;
    int passed = 0;
    REQUIRE(pp_reproduce("table4", nullptr, &text, &passed) == PP_OK);
    CHECK(passed == 1);
    const json report = json::parse(take(text));
    CHECK(report.at("passed") == true);
    CHECK(report.at("checks").size() == 41);
    CHECK(report.at("csv").get<std::string>().rfind("total,", 0) == 0);
}
