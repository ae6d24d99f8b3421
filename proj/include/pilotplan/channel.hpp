// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pilotplan/error.hpp"
#include "pilotplan/lattice.hpp"

namespace pilotplan {

struct ChannelParams {
    double gamma = 3.7;          // signal decay exponent, 2..4
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    int workers = 0;             // 0 = hardware concurrency
};

/// Generation record for a rate table; cache hits require an exact match.
struct RateProvenance {
    std::string kind;            // "monte-carlo" or "linear"
    std::int64_t cells = 0;      // L (monte-carlo)
    double gamma = 0.0;
    double hole_ratio = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double c0 = 0.0;             // linear model
    double slope = 0.0;
    friend bool operator==(const RateProvenance&, const RateProvenance&) = default;
};

/// Per-depth asymptotic rates C_0 < C_1 < ... < C_{m-1} in bits/s/Hz.
struct DepthRates {
    std::vector<double> rates;
    std::vector<double> std_errors;  // zero for the linear model
    RateProvenance provenance;

    int depth_count() const { return static_cast<int>(rates.size()); }
};

/// beta = distance^(-gamma).
double slow_fading(double distance, double gamma);

/// Saturated rate log2(1 + beta_home^2 / sum beta_l^2); invariant under
/// common scaling of all betas.
double asymptotic_rate(double beta_home, std::span<const double> beta_interferers);

/// Monte-Carlo estimate of the per-depth rate table. One user is sampled
/// in the home cell and one in every other cell of its pilot group, per
/// trial. Deterministic for a fixed seed, independent of worker count,
/// and independent of the cell radius.
DepthRates estimate_depth_rates(const CellGrid& grid, const ChannelParams& params);

/// C_i = c0 + slope * i; the exact algebraic tests run on this table.
DepthRates linear_rate_model(double c0, double slope, int depth_count);

}  // namespace pilotplan
