// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pilotplan/wsr2.hpp"

namespace pilotplan {
namespace oracle {

/// Brute-force certification result for one instance.
struct SearchReport {
    double best_value = 0.0;
    std::vector<PilotVector> witnesses;       // every maximizer
    std::vector<std::int64_t> witness_splits; // group-1 lengths of maximizing pairs
    std::int64_t candidates = 0;              // enumerated candidate count
    std::int64_t best_total = 0;              // brute_ncoh: best T
    bool agrees = false;                      // matches the closed form
};

/// Every valid pilot assignment vector for (L, K), optionally filtered by
/// pilot length. Guarded to small instances unless force is set.
void enumerate_valid(std::int64_t cells, std::int64_t users,
                     const std::function<void(const PilotVector&)>& sink,
                     std::int64_t length_filter = -1, bool force = false);

std::vector<PilotVector> enumerate_valid(std::int64_t cells, std::int64_t users,
                                         std::int64_t length_filter = -1,
                                         bool force = false);

/// Independent count of valid vectors (with the given pilot length) via a
/// recurrence on the scaled leaf-count sum; guards the generator.
std::int64_t count_valid(std::int64_t cells, std::int64_t users,
                         std::int64_t length_filter = -1);

/// Exhaustive argmax of c_sum over Omega(N_p0, K), checked against
/// optimal_fixed_length.
SearchReport brute_fixed_length(std::int64_t n_p0, std::int64_t users,
                                std::int64_t cells, const DepthRates& rates,
                                bool force = false);

/// Exhaustive max of c_wsr over all pairs with total length T; witnesses
/// include every maximizer (validates the tie set of the split rule).
SearchReport brute_two_group(std::int64_t total, const TwoGroupConfig& cfg,
                             const DepthRates& rates, bool force = false);

/// Global max of c_net_wsr over every feasible T and pair; compares the
/// best T against the threshold-rule optimizer.
SearchReport brute_ncoh(double n_coh, const TwoGroupConfig& cfg,
                        const DepthRates& rates, bool force = false);

}  // namespace oracle
}  // namespace pilotplan
