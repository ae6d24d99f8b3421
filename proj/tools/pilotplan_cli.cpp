// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C API: rate estimation with caching,
// optimization, N_coh sweeps, reproduction of the published tables and
// figures, and brute-force verification of the closed forms.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pilotplan.h"

using nlohmann::json;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitInfeasible = 3;

struct ChannelSettings {
    std::int64_t cells = 81;
    double cell_radius = 500.0;
    double hole_ratio = 0.14;
    double gamma = 3.7;
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
};

struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void die(int exit_code, const std::string& message) {
    throw CliError{exit_code, message};
}

int exit_code_for(pp_status status) {
    switch (status) {
        case PP_ERR_MISMATCH:
            return kExitMismatch;
        case PP_ERR_INVALID_ARGUMENT:
        case PP_ERR_PARSE:
            return kExitInvalidConfig;
        default:
            return kExitInvalidConfig;
    }
}

void check(pp_status status) {
    if (status != PP_OK) die(exit_code_for(status), pp_last_error());
}

// Takes ownership of a C-API string.
std::string take(char* text) {
    std::string out = text ? text : "";
    pp_string_free(text);
    return out;
}

int order_of(std::int64_t cells) {
    std::int64_t v = 1;
    int m = 0;
    while (v < cells) { v *= 3; ++m; }
    if (v != cells || m < 2)
        die(kExitInvalidConfig, "L must be a power of 3, at least 9");
    return m;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) die(kExitInvalidConfig, "cannot open config: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        die(kExitInvalidConfig, std::string("invalid config JSON: ") + e.what());
    }
}

ChannelSettings channel_settings(const json& config, std::int64_t cells,
                                 std::optional<std::int64_t> trials_flag,
                                 std::optional<std::uint64_t> seed_flag) {
    ChannelSettings s;
    s.cells = cells;
    if (config.contains("channel")) {
        const json& c = config.at("channel");
        s.cell_radius = c.value("cell_radius", s.cell_radius);
        s.hole_ratio = c.value("hole_ratio", s.hole_ratio);
        s.gamma = c.value("gamma", s.gamma);
        s.trials = c.value("trials", s.trials);
        s.seed = c.value("seed", s.seed);
    }
    if (trials_flag) s.trials = *trials_flag;
    if (seed_flag) s.seed = *seed_flag;
    return s;
}

std::string cache_path(const std::string& dir, const ChannelSettings& s) {
    std::ostringstream name;
    name.precision(17);
    name << "rates_L" << s.cells << "_g" << s.gamma << "_h" << s.hole_ratio
         << "_t" << s.trials << "_s" << s.seed << ".json";
    return (std::filesystem::path(dir) / name.str()).string();
}

// A cache hit requires an exact match of every generation parameter.
bool cache_matches(const json& j, const ChannelSettings& s) {
    return j.value("schema_version", 0) == 1 &&
           j.value("kind", "") == "monte-carlo" &&
           j.value("L", std::int64_t{0}) == s.cells &&
           j.value("gamma", 0.0) == s.gamma &&
           j.value("hole_ratio", 0.0) == s.hole_ratio &&
           j.value("trials", std::int64_t{0}) == s.trials &&
           j.value("seed", std::uint64_t{0}) == s.seed;
}

pp_rates* load_cached_rates(const std::string& path, const ChannelSettings& s) {
    std::ifstream in(path);
    if (!in) return nullptr;
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        if (!cache_matches(json::parse(text), s)) return nullptr;
    } catch (const json::exception&) {
        std::cerr << "warning: corrupt rate cache " << path
                  << ", regenerating\n";
        return nullptr;
    }
    pp_rates* rates = nullptr;
    if (pp_rates_from_json(text.c_str(), &rates) != PP_OK) {
        std::cerr << "warning: corrupt rate cache " << path
                  << ", regenerating\n";
        return nullptr;
    }
    return rates;
}

// Monte-Carlo rates through the cache; cache_dir empty disables caching.
pp_rates* monte_carlo_rates(const ChannelSettings& s,
                            const std::string& cache_dir) {
    if (!cache_dir.empty()) {
        if (pp_rates* hit = load_cached_rates(cache_path(cache_dir, s), s))
            return hit;
    }
    pp_rates* rates = nullptr;
    check(pp_rates_estimate(order_of(s.cells), s.cell_radius, s.hole_ratio,
                            s.gamma, s.trials, s.seed, 0, &rates));
    if (!cache_dir.empty()) {
        char* text = nullptr;
        check(pp_rates_to_json(rates, &text));
        std::filesystem::create_directories(cache_dir);
        std::ofstream out(cache_path(cache_dir, s), std::ios::binary);
        out << take(text);
    }
    return rates;
}

pp_rates* linear_rates(const std::string& spec, int depth_count) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        die(kExitInvalidConfig, "--linear-rates expects c0,slope");
    pp_rates* rates = nullptr;
    try {
        check(pp_rates_linear(std::stod(spec.substr(0, comma)),
                              std::stod(spec.substr(comma + 1)), depth_count,
                              &rates));
    } catch (const std::invalid_argument&) {
        die(kExitInvalidConfig, "--linear-rates expects c0,slope");
    }
    return rates;
}

// Scenario rates: linear when requested, else cached Monte-Carlo.
pp_rates* scenario_rates(const json& config, const std::string& linear_spec,
                         const std::string& cache_dir,
                         std::optional<std::int64_t> trials_flag,
                         std::optional<std::uint64_t> seed_flag) {
    const auto cells = config.at("L").get<std::int64_t>();
    if (!linear_spec.empty()) return linear_rates(linear_spec, order_of(cells));
    return monte_carlo_rates(
        channel_settings(config, cells, trials_flag, seed_flag), cache_dir);
}

struct NcohRange {
    double lo = 0.0, hi = 0.0, step = 0.0;
};

NcohRange parse_range(const std::string& text) {
    NcohRange r;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':')
        die(kExitInvalidConfig, "--ncoh-range expects lo:hi:step");
    return r;
}

void print_report(const std::string& report_text, const std::string& format) {
    const json report = json::parse(report_text);
    if (format == "json") {
        std::cout << report_text;
        return;
    }
    if (format == "csv") {
        std::cout << report.value("csv", "");
        return;
    }
    std::cout << report.value("title", "") << "\n";
    for (const json& c : report.at("checks")) {
        std::cout << (c.at("pass").get<bool>() ? "  PASS  " : "  FAIL  ")
                  << c.at("name").get<std::string>();
        const std::string detail = c.value("detail", "");
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Pilot-reuse planner for prioritized multi-cell massive MIMO"};
    app.require_subcommand(1);

    std::string config_path, cache_dir, format = "json", linear_spec;
    std::optional<std::int64_t> trials_flag;
    std::optional<std::uint64_t> seed_flag;
    double ncoh = 0.0;
    std::string ncoh_range_spec;
    app.add_option("--config", config_path, "Scenario config (JSON)");
    app.add_option("--seed", seed_flag, "Monte-Carlo seed override");
    app.add_option("--trials", trials_flag, "Monte-Carlo trial count override");
    app.add_option("--cache-dir", cache_dir, "Rate-table cache directory");
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--linear-rates", linear_spec,
                   "Use the linear rate model c0,slope instead of Monte-Carlo");

    CLI::App* cmd_rates =
        app.add_subcommand("rates", "Estimate or load the per-depth rate table");
    CLI::App* cmd_optimize =
        app.add_subcommand("optimize", "Optimal assignment for one N_coh");
    cmd_optimize->add_option("--ncoh", ncoh, "Normalized coherence time")
        ->required();
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "Sweep N_coh and emit one row per point");
    cmd_sweep
        ->add_option("--ncoh-range", ncoh_range_spec, "Range as lo:hi:step")
        ->required();
    std::string target;
    CLI::App* cmd_reproduce = app.add_subcommand(
        "reproduce", "Check a published table or figure against this build");
    cmd_reproduce->add_option("target", target, "table3|table4|fig3|fig4|fig5")
        ->required()
        ->check(CLI::IsMember({"table3", "table4", "fig3", "fig4", "fig5"}));
    std::string scale = "full-small-grid";
    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "Certify the closed forms against brute-force search");
    cmd_verify->add_option("--scale", scale, "small|full-small-grid")
        ->check(CLI::IsMember({"small", "full-small-grid"}));

    // Global options may appear after the subcommand name.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInvalidConfig;
    }

    if (*cmd_rates) {
        if (config_path.empty()) die(kExitInvalidConfig, "--config is required");
        const json config = load_config(config_path);
        pp_rates* rates =
            scenario_rates(config, linear_spec, cache_dir, trials_flag, seed_flag);
        char* text = nullptr;
        check(pp_rates_to_json(rates, &text));
        const std::string payload = take(text);
        if (format == "text") {
            const json j = json::parse(payload);
            std::cout << "depth  mean (bits/s/Hz)  std error\n";
            int depth = 0;
            for (const json& d : j.at("depths")) {
                std::cout << depth++ << "      " << d.at("mean").get<double>()
                          << "  +/- " << d.at("std_error").get<double>() << "\n";
            }
        } else {
            std::cout << payload;
        }
        pp_rates_free(rates);
        return 0;
    }

    if (*cmd_optimize || *cmd_sweep) {
        if (config_path.empty()) die(kExitInvalidConfig, "--config is required");
        const json config = load_config(config_path);
        const std::string config_text = config.dump();
        pp_rates* rates =
            scenario_rates(config, linear_spec, cache_dir, trials_flag, seed_flag);
        int exit_code = 0;
        if (*cmd_optimize) {
            char* text = nullptr;
            check(pp_optimize(config_text.c_str(), rates, ncoh, &text));
            const std::string payload = take(text);
            if (!json::parse(payload).at("feasible").get<bool>()) {
                std::cerr << "warning: N_coh=" << ncoh
                          << " leaves no data time; emitting the full-reuse "
                             "fallback\n";
                exit_code = kExitInfeasible;
            }
            std::cout << payload;
        } else {
            const NcohRange r = parse_range(ncoh_range_spec);
            char* text = nullptr;
            check(pp_sweep(config_text.c_str(), rates, r.lo, r.hi, r.step,
                           format == "csv" ? 1 : 0, &text));
            std::cout << take(text);
        }
        pp_rates_free(rates);
        return exit_code;
    }

    if (*cmd_reproduce) {
        pp_rates* rates = nullptr;
        if (target != "table4") {
            // table3/fig3/fig4 run on the 81-cell grid, fig5 on 27 cells.
            json config = {{"L", target == "fig5" ? 27 : 81}};
            rates = monte_carlo_rates(
                channel_settings(config, config.at("L").get<std::int64_t>(),
                                 trials_flag, seed_flag),
                cache_dir);
        }
        char* text = nullptr;
        int passed = 0;
        const pp_status status = pp_reproduce(target.c_str(), rates, &text, &passed);
        pp_rates_free(rates);
        if (status != PP_OK && status != PP_ERR_MISMATCH)
            die(exit_code_for(status), pp_last_error());
        print_report(take(text), format == "json" ? "text" : format);
        return passed ? 0 : kExitMismatch;
    }

    if (*cmd_verify) {
        char* text = nullptr;
        int passed = 0;
        const pp_status status = pp_verify(scale == "full-small-grid" ? 1 : 0,
                                           seed_flag.value_or(1), &text, &passed);
        if (status != PP_OK && status != PP_ERR_MISMATCH)
            die(exit_code_for(status), pp_last_error());
        print_report(take(text), format == "json" ? "text" : format);
        return passed ? 0 : kExitMismatch;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidConfig;
    }
}
