// SPDX-License-Identifier: Apache-2.0
#include "pilotplan/assignment.hpp"

#include "pilotplan/rational.hpp"

namespace pilotplan {

namespace {

int order_of(std::int64_t cells) {
    int m = 0;
    std::int64_t v = 1;
    while (v < cells) { v *= 3; ++m; }
    if (v != cells || m < 2) throw InvalidParameter("cell count must be 3^m with m >= 2");
    return m;
}

}  // namespace

bool is_valid(const PilotVector& p) {
    const int m = order_of(p.cells);
    if (p.depth_count() != m) return false;
    std::int64_t weighted = 0;  // sum p_i * 3^(m-1-i)
    for (int i = 0; i < m; ++i) {
        const std::int64_t e = p.entries[i];
        if (e < 0 || e > p.users * pow3(i)) return false;
        weighted += e * pow3(m - 1 - i);
    }
    return weighted == p.users * pow3(m - 1);
}

std::int64_t n_pil(const PilotVector& p) {
    std::int64_t total = 0;
    for (std::int64_t e : p.entries) total += e;
    return total;
}

int chi(std::int64_t n_p0, std::int64_t users) {
    if (n_p0 < users || (n_p0 - users) % 2 != 0)
        throw InvalidLength("pilot length must be in {K, K+2, ...}");
    const std::int64_t half = (n_p0 - users) / 2;
    std::int64_t acc = 0;
    int k = 0;
    for (;; ++k) {
        acc += users * pow3(k);
        if (acc > half) return k;
    }
}

bool feasible_length(std::int64_t n_p0, std::int64_t users, std::int64_t cells) {
    return n_p0 >= users && n_p0 <= cells * users / 3 && (n_p0 - users) % 2 == 0;
}

PilotVector optimal_fixed_length(std::int64_t n_p0, std::int64_t users,
                                 std::int64_t cells) {
    const int m = order_of(cells);
    if (!feasible_length(n_p0, users, cells))
        throw InvalidLength("pilot length must be in {K, K+2, ..., LK/3}");
    const int pivot = chi(n_p0, users);
    const std::int64_t half = (n_p0 - users) / 2;
    PilotVector p{std::vector<std::int64_t>(m, 0), users, cells};
    std::int64_t prefix = 0;  // sum_{t <= pivot-1} K*3^t
    for (int t = 0; t < pivot; ++t) prefix += users * pow3(t);
    p.entries[pivot] = prefix + users * pow3(pivot) - half;
    if (pivot + 1 < m) p.entries[pivot + 1] = 3 * (half - prefix);
    return p;
}

double c_sum(const PilotVector& p, const DepthRates& rates) {
    if (p.depth_count() != rates.depth_count())
        throw ShapeError("rate table depth does not match assignment vector");
    double total = 0.0;
    double scale = 1.0;
    for (int i = 0; i < p.depth_count(); ++i) {
        total += scale * static_cast<double>(p.entries[i]) * rates.rates[i];
        scale /= 3.0;
    }
    return total;
}

double c_net(const PilotVector& p, const DepthRates& rates, double n_coh) {
    if (!(n_coh > 0.0)) throw InvalidParameter("normalized coherence time must be positive");
    return (n_coh - static_cast<double>(n_pil(p))) / n_coh * c_sum(p, rates);
}

}  // namespace pilotplan
