// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "pilotplan/assignment.hpp"
#include "pilotplan/rational.hpp"

namespace pilotplan {

/// n >= 2 priority groups with strictly decreasing weights.
struct MultiGroupConfig {
    std::int64_t cells = 0;
    std::int64_t users = 0;
    std::vector<Rational> alphas;
    std::vector<Rational> omegas;
    std::vector<std::int64_t> group_users;  // K_i = alpha_i * K
    // Compare marginal increments as exact omega_i * 3^-d_i instead of
    // actual rate differences (the published allocation tables assume
    // equal rate increments per depth).
    bool linear_increments = false;

    int group_count() const { return static_cast<int>(group_users.size()); }

    static MultiGroupConfig make(std::int64_t cells, std::int64_t users,
                                 std::vector<Rational> alphas,
                                 std::vector<Rational> omegas,
                                 bool linear_increments = false);
};

struct MultiGroupSolution {
    std::vector<std::int64_t> splits;  // rho_1 ... rho_n
    std::vector<PilotVector> vectors;
    std::int64_t total = 0;
    double wsr = 0.0;
    double net_wsr = 0.0;
    bool feasible = true;
};

/// Greedy marginal-increment allocation of T total pilots: each surplus
/// pilot pair goes to the unsaturated group with the largest weighted
/// gain, ties broken toward the higher priority (smaller index).
std::vector<std::int64_t> greedy_allocate(std::int64_t total,
                                          const MultiGroupConfig& cfg,
                                          const DepthRates& rates);

double c_wsr(const std::vector<PilotVector>& vectors, const DepthRates& rates,
             const MultiGroupConfig& cfg);

/// Best total pilot length for a given N_coh, sweeping every feasible T
/// (ties resolved toward the smaller T).
MultiGroupSolution optimize(double n_coh, const MultiGroupConfig& cfg,
                            const DepthRates& rates);

}  // namespace pilotplan
