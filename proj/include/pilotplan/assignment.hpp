// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "pilotplan/channel.hpp"
#include "pilotplan/error.hpp"

namespace pilotplan {

/// Leaf counts per partition depth for one user group. Carries the
/// (users, cells) context so cross-group misuse is detectable.
struct PilotVector {
    std::vector<std::int64_t> entries;  // p_0 ... p_{m-1}
    std::int64_t users = 0;             // K this vector serves
    std::int64_t cells = 0;             // L

    int depth_count() const { return static_cast<int>(entries.size()); }
    friend bool operator==(const PilotVector&, const PilotVector&) = default;
};

/// Both membership conditions, evaluated in exact integer arithmetic
/// (the weighted sum is scaled by 3^(m-1)).
bool is_valid(const PilotVector& p);

/// Total number of pilots used.
std::int64_t n_pil(const PilotVector& p);

/// Smallest k with sum_{i<=k} K*3^i > (n_p0 - K)/2; the depth of the
/// shallowest leaf of the fixed-length optimum.
int chi(std::int64_t n_p0, std::int64_t users);

/// Closed-form per-group optimum for a fixed pilot length: nonzero only
/// at depths chi and chi+1.
PilotVector optimal_fixed_length(std::int64_t n_p0, std::int64_t users,
                                 std::int64_t cells);

/// Per-cell sum rate: sum_i 3^-i * p_i * C_i.
double c_sum(const PilotVector& p, const DepthRates& rates);

/// Net sum rate (N_coh - N_pil)/N_coh * c_sum; may be negative when the
/// pilots exceed the coherence budget (callers decide feasibility).
double c_net(const PilotVector& p, const DepthRates& rates, double n_coh);

/// Feasible pilot lengths are {K, K+2, ..., LK/3}.
bool feasible_length(std::int64_t n_p0, std::int64_t users, std::int64_t cells);

}  // namespace pilotplan
