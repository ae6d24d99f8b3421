// SPDX-License-Identifier: Apache-2.0
#include "pilotplan.h"

#include <cstring>
#include <string>
#include <variant>

#include <json.hpp>

#include "pilotplan/channel.hpp"
#include "pilotplan/experiments.hpp"
#include "pilotplan/multigroup.hpp"
#include "pilotplan/wsr2.hpp"

using nlohmann::json;
using namespace pilotplan;

struct pp_rates {
    DepthRates table;
};

namespace {

thread_local std::string g_last_error = "no error";

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

pp_status fail(pp_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

// Maps library exceptions onto the C status codes.
template <typename Fn>
pp_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        return fail(PP_ERR_PARSE, e.what());
    } catch (const DomainError& e) {
        return fail(PP_ERR_DOMAIN, e.what());
    } catch (const DepthError& e) {
        return fail(PP_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(PP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(PP_ERR_INTERNAL, e.what());
    }
}

json rates_json(const DepthRates& r) {
    json depths = json::array();
    for (std::size_t i = 0; i < r.rates.size(); ++i)
        depths.push_back({{"mean", r.rates[i]}, {"std_error", r.std_errors[i]}});
    json j{{"schema_version", 1},
           {"kind", r.provenance.kind},
           {"depths", depths}};
    if (r.provenance.kind == "monte-carlo") {
        j["L"] = r.provenance.cells;
        j["gamma"] = r.provenance.gamma;
        j["hole_ratio"] = r.provenance.hole_ratio;
        j["trials"] = r.provenance.trials;
        j["seed"] = r.provenance.seed;
    } else {
        j["c0"] = r.provenance.c0;
        j["slope"] = r.provenance.slope;
    }
    return j;
}

DepthRates rates_from(const json& j) {
    if (j.at("schema_version").get<int>() != 1)
        throw InvalidParameter("unsupported rate-table schema version");
    DepthRates r;
    r.provenance.kind = j.at("kind").get<std::string>();
    if (r.provenance.kind == "monte-carlo") {
        r.provenance.cells = j.at("L").get<std::int64_t>();
        r.provenance.gamma = j.at("gamma").get<double>();
        r.provenance.hole_ratio = j.at("hole_ratio").get<double>();
        r.provenance.trials = j.at("trials").get<std::int64_t>();
        r.provenance.seed = j.at("seed").get<std::uint64_t>();
    } else if (r.provenance.kind == "linear") {
        r.provenance.c0 = j.at("c0").get<double>();
        r.provenance.slope = j.at("slope").get<double>();
    } else {
        throw InvalidParameter("unknown rate-table kind: " + r.provenance.kind);
    }
    for (const json& d : j.at("depths")) {
        r.rates.push_back(d.at("mean").get<double>());
        r.std_errors.push_back(d.at("std_error").get<double>());
    }
    if (r.rates.size() < 2) throw InvalidParameter("rate table needs >= 2 depths");
    return r;
}

using Scenario = std::variant<TwoGroupConfig, MultiGroupConfig>;

Scenario parse_scenario(const char* config_json) {
    if (config_json == nullptr) throw InvalidParameter("null config");
    const json j = json::parse(config_json);
    const auto cells = j.at("L").get<std::int64_t>();
    const auto users = j.at("K").get<std::int64_t>();
    if (j.contains("groups")) {
        std::vector<Rational> alphas, omegas;
        for (const json& g : j.at("groups")) {
            alphas.push_back(Rational::parse(g.at("alpha").get<std::string>()));
            omegas.push_back(Rational::parse(g.at("omega").get<std::string>()));
        }
        return MultiGroupConfig::make(cells, users, std::move(alphas),
                                      std::move(omegas),
                                      j.value("linear_increments", false));
    }
    return TwoGroupConfig::make(cells, users,
                                Rational::parse(j.at("alpha").get<std::string>()),
                                Rational::parse(j.at("omega").get<std::string>()));
}

json vector_json(const PilotVector& p) {
    return json(p.entries);
}

json solution_json(const TwoGroupSolution& sol) {
    return {{"total", sol.total},
            {"splits", json::array({sol.split, sol.total - sol.split})},
            {"vectors", json::array({vector_json(sol.p1), vector_json(sol.p2)})},
            {"wsr", sol.wsr},
            {"net_wsr", sol.net_wsr},
            {"interval_index", sol.n_index},
            {"feasible", sol.feasible}};
}

json solution_json(const MultiGroupSolution& sol) {
    json vecs = json::array();
    for (const PilotVector& p : sol.vectors) vecs.push_back(vector_json(p));
    return {{"total", sol.total},
            {"splits", json(sol.splits)},
            {"vectors", vecs},
            {"wsr", sol.wsr},
            {"net_wsr", sol.net_wsr},
            {"feasible", sol.feasible}};
}

json report_json(const experiments::Report& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"title", report.title},
            {"passed", report.passed()},
            {"checks", checks},
            {"csv", report.csv}};
}

json rows_json(const std::vector<experiments::SweepRow>& rows) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"n_coh", r.n_coh},
                       {"total", r.total},
                       {"splits", json(r.splits)},
                       {"wsr", r.wsr},
                       {"net_wsr", r.net_wsr},
                       {"conventional_net_wsr", r.conventional_net_wsr},
                       {"per_user_rates", json(r.per_user_rates)}});
    return out;
}

const DepthRates& require_rates(const pp_rates* rates) {
    if (rates == nullptr) throw InvalidParameter("null rate table");
    return rates->table;
}

}  // namespace

extern "C" {

const char* pp_last_error(void) { return g_last_error.c_str(); }

void pp_string_free(char* text) { delete[] text; }

void pp_rates_free(pp_rates* rates) { delete rates; }

pp_status pp_rates_estimate(int order, double cell_radius, double hole_ratio,
                            double gamma, int64_t trials, uint64_t seed,
                            int workers, pp_rates** out) {
    return guarded([&]() {
        if (out == nullptr) throw InvalidParameter("null output pointer");
        const CellGrid grid(order, cell_radius, hole_ratio);
        ChannelParams params{.gamma = gamma, .trials = trials, .seed = seed,
                             .workers = workers};
        *out = new pp_rates{estimate_depth_rates(grid, params)};
        return PP_OK;
    });
}

pp_status pp_rates_linear(double c0, double slope, int depth_count,
                          pp_rates** out) {
    return guarded([&]() {
        if (out == nullptr) throw InvalidParameter("null output pointer");
        *out = new pp_rates{linear_rate_model(c0, slope, depth_count)};
        return PP_OK;
    });
}

pp_status pp_rates_to_json(const pp_rates* rates, char** json_out) {
    return guarded([&]() {
        if (json_out == nullptr) throw InvalidParameter("null output pointer");
        *json_out = dup_string(rates_json(require_rates(rates)).dump(2) + "\n");
        return PP_OK;
    });
}

pp_status pp_rates_from_json(const char* text, pp_rates** out) {
    return guarded([&]() {
        if (text == nullptr || out == nullptr)
            throw InvalidParameter("null argument");
        *out = new pp_rates{rates_from(json::parse(text))};
        return PP_OK;
    });
}

pp_status pp_optimize(const char* config_json, const pp_rates* rates,
                      double n_coh, char** json_out) {
    return guarded([&]() {
        if (json_out == nullptr) throw InvalidParameter("null output pointer");
        const Scenario scenario = parse_scenario(config_json);
        const DepthRates& table = require_rates(rates);
        json result;
        if (const auto* two = std::get_if<TwoGroupConfig>(&scenario))
            result = solution_json(optimize(n_coh, table, *two));
        else
            result = solution_json(
                optimize(n_coh, std::get<MultiGroupConfig>(scenario), table));
        *json_out = dup_string(result.dump(2) + "\n");
        return PP_OK;
    });
}

pp_status pp_sweep(const char* config_json, const pp_rates* rates, double lo,
                   double hi, double step, int as_csv, char** out) {
    return guarded([&]() {
        if (out == nullptr) throw InvalidParameter("null output pointer");
        const Scenario scenario = parse_scenario(config_json);
        const DepthRates& table = require_rates(rates);
        std::vector<experiments::SweepRow> rows;
        if (const auto* two = std::get_if<TwoGroupConfig>(&scenario))
            rows = experiments::sweep(*two, table, lo, hi, step);
        else
            rows = experiments::sweep(std::get<MultiGroupConfig>(scenario), table,
                                      lo, hi, step);
        *out = dup_string(as_csv ? experiments::sweep_csv(rows)
                                 : rows_json(rows).dump(2) + "\n");
        return PP_OK;
    });
}

pp_status pp_reproduce(const char* target, const pp_rates* rates,
                       char** report_json_out, int* passed) {
    return guarded([&]() {
        if (target == nullptr || report_json_out == nullptr || passed == nullptr)
            throw InvalidParameter("null argument");
        const std::string name = target;
        experiments::Report report;
        if (name == "table4")
            report = experiments::reproduce_table4();
        else if (name == "table3")
            report = experiments::reproduce_table3(require_rates(rates));
        else if (name == "fig3")
            report = experiments::reproduce_fig3(require_rates(rates));
        else if (name == "fig4")
            report = experiments::reproduce_fig4(require_rates(rates));
        else if (name == "fig5")
            report = experiments::reproduce_fig5(require_rates(rates));
        else
            throw InvalidParameter("unknown reproduction target: " + name);
        *passed = report.passed() ? 1 : 0;
        *report_json_out = dup_string(report_json(report).dump(2) + "\n");
        if (!report.passed())
            return fail(PP_ERR_MISMATCH, "reproduction checks failed: " + name);
        return PP_OK;
    });
}

pp_status pp_verify(int full_small_grid, uint64_t seed, char** report_json_out,
                    int* passed) {
    return guarded([&]() {
        if (report_json_out == nullptr || passed == nullptr)
            throw InvalidParameter("null argument");
        const experiments::Report report =
            experiments::verify(full_small_grid != 0, seed);
        *passed = report.passed() ? 1 : 0;
        *report_json_out = dup_string(report_json(report).dump(2) + "\n");
        if (!report.passed())
            return fail(PP_ERR_MISMATCH, "oracle certification failed");
        return PP_OK;
    });
}

}  // extern "C"
