// SPDX-License-Identifier: Apache-2.0
#include "pilotplan/oracle.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace pilotplan {
namespace oracle {

namespace {

constexpr double kRelTol = 1e-9;

int order_of(std::int64_t cells) {
    int m = 0;
    std::int64_t v = 1;
    while (v < cells) { v *= 3; ++m; }
    if (v != cells || m < 2) throw InvalidParameter("cell count must be 3^m with m >= 2");
    return m;
}

void check_guard(std::int64_t cells, std::int64_t users, bool force) {
    if (force) return;
    if (cells > 27 || users > 6)
        throw InvalidParameter(
            "instance too large for exhaustive search (use force to override)");
}

bool close(double a, double b) {
    return std::abs(a - b) <= kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

void recurse(std::int64_t cells, std::int64_t users, int m, int depth,
             std::int64_t remaining_scaled, PilotVector& partial,
             std::int64_t length_filter, std::int64_t used,
             const std::function<void(const PilotVector&)>& sink) {
    if (depth == m) {
        if (remaining_scaled == 0 && (length_filter < 0 || used == length_filter))
            sink(partial);
        return;
    }
    const std::int64_t weight = pow3(m - 1 - depth);
    const std::int64_t cap = users * pow3(depth);
    for (std::int64_t p = 0; p <= cap && p * weight <= remaining_scaled; ++p) {
        partial.entries[depth] = p;
        recurse(cells, users, m, depth + 1, remaining_scaled - p * weight, partial,
                length_filter, used + p, sink);
    }
    partial.entries[depth] = 0;
}

}  // namespace

void enumerate_valid(std::int64_t cells, std::int64_t users,
                     const std::function<void(const PilotVector&)>& sink,
                     std::int64_t length_filter, bool force) {
    check_guard(cells, users, force);
    const int m = order_of(cells);
    PilotVector partial{std::vector<std::int64_t>(m, 0), users, cells};
    recurse(cells, users, m, 0, users * pow3(m - 1), partial, length_filter, 0, sink);
}

std::vector<PilotVector> enumerate_valid(std::int64_t cells, std::int64_t users,
                                         std::int64_t length_filter, bool force) {
    std::vector<PilotVector> out;
    enumerate_valid(cells, users, [&](const PilotVector& p) { out.push_back(p); },
                    length_filter, force);
    return out;
}

std::int64_t count_valid(std::int64_t cells, std::int64_t users,
                         std::int64_t length_filter) {
    const int m = order_of(cells);
    // Recurrence over depths on (remaining scaled sum, pilots used so far);
    // independent of the enumeration path above.
    using Key = std::tuple<int, std::int64_t, std::int64_t>;
    std::map<Key, std::int64_t> memo;
    const std::function<std::int64_t(int, std::int64_t, std::int64_t)> count =
        [&](int depth, std::int64_t remaining, std::int64_t used) -> std::int64_t {
        if (depth == m)
            return remaining == 0 && (length_filter < 0 || used == length_filter) ? 1 : 0;
        const Key key{depth, remaining, used};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const std::int64_t weight = pow3(m - 1 - depth);
        const std::int64_t cap = users * pow3(depth);
        std::int64_t total = 0;
        for (std::int64_t p = 0; p <= cap && p * weight <= remaining; ++p)
            total += count(depth + 1, remaining - p * weight, used + p);
        memo[key] = total;
        return total;
    };
    return count(0, users * pow3(m - 1), 0);
}

SearchReport brute_fixed_length(std::int64_t n_p0, std::int64_t users,
                                std::int64_t cells, const DepthRates& rates,
                                bool force) {
    SearchReport report;
    double best = -1.0;
    enumerate_valid(
        cells, users,
        [&](const PilotVector& p) {
            ++report.candidates;
            const double value = c_sum(p, rates);
            if (value > best && !close(value, best)) {
                best = value;
                report.witnesses.clear();
            }
            if (close(value, best)) report.witnesses.push_back(p);
        },
        n_p0, force);
    report.best_value = best;
    const PilotVector closed = optimal_fixed_length(n_p0, users, cells);
    report.agrees = close(c_sum(closed, rates), best);
    return report;
}

SearchReport brute_two_group(std::int64_t total, const TwoGroupConfig& cfg,
                             const DepthRates& rates, bool force) {
    check_guard(cfg.cells, cfg.users, force);
    SearchReport report;
    double best = -1.0;
    const SplitBounds sb = bounds(total, cfg);
    for (std::int64_t t : sb.candidates) {
        const auto firsts = enumerate_valid(cfg.cells, cfg.k1, t, true);
        const auto seconds = enumerate_valid(cfg.cells, cfg.k2, total - t, true);
        for (const PilotVector& p1 : firsts) {
            for (const PilotVector& p2 : seconds) {
                ++report.candidates;
                const double value = c_wsr(p1, p2, rates, cfg);
                if (value > best && !close(value, best)) {
                    best = value;
                    report.witnesses.clear();
                    report.witness_splits.clear();
                }
                if (close(value, best)) {
                    report.witnesses.push_back(p1);
                    report.witnesses.push_back(p2);
                    if (report.witness_splits.empty() ||
                        report.witness_splits.back() != t)
                        report.witness_splits.push_back(t);
                }
            }
        }
    }
    report.best_value = best;
    report.agrees = close(wsr_bar(total, rates, cfg), best);
    return report;
}

SearchReport brute_ncoh(double n_coh, const TwoGroupConfig& cfg,
                        const DepthRates& rates, bool force) {
    check_guard(cfg.cells, cfg.users, force);
    if (!(n_coh > 0.0)) throw InvalidParameter("normalized coherence time must be positive");
    SearchReport report;
    double best = 0.0;
    bool first = true;
    for (std::int64_t total = cfg.users; total <= cfg.cells * cfg.users / 3;
         total += 2) {
        const SearchReport inner = brute_two_group(total, cfg, rates, force);
        report.candidates += inner.candidates;
        const double net =
            (n_coh - static_cast<double>(total)) / n_coh * inner.best_value;
        // Ties keep the smaller total, mirroring the threshold rule.
        if (first || (net > best && !close(net, best))) {
            first = false;
            best = net;
            report.best_total = total;
        }
    }
    report.best_value = best;
    const TwoGroupSolution sol = optimize(n_coh, rates, cfg);
    report.agrees = sol.total == report.best_total && close(sol.net_wsr, best);
    return report;
}

}  // namespace oracle
}  // namespace pilotplan
