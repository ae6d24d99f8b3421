// SPDX-License-Identifier: Apache-2.0
#include "pilotplan/wsr2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pilotplan {

namespace {

int order_of(std::int64_t cells) {
    int m = 0;
    std::int64_t v = 1;
    while (v < cells) { v *= 3; ++m; }
    if (v != cells || m < 2) throw InvalidParameter("cell count must be 3^m with m >= 2");
    return m;
}

void require_feasible(std::int64_t total, const TwoGroupConfig& cfg) {
    if (!feasible_length(total, cfg.users, cfg.cells))
        throw InvalidLength("total pilot length must be in {K, K+2, ..., LK/3}");
}

}  // namespace

TwoGroupConfig TwoGroupConfig::make(std::int64_t cells, std::int64_t users,
                                    Rational alpha, Rational omega) {
    order_of(cells);
    if (users < 2) throw InvalidParameter("need at least one user per group");
    if (!(Rational(0) < alpha && alpha < Rational(1)))
        throw InvalidParameter("alpha must lie in (0, 1)");
    if (!(Rational(1, 2) <= omega && omega < Rational(1)))
        throw InvalidParameter("omega must lie in [1/2, 1)");
    if ((users * alpha.num) % alpha.den != 0)
        throw InvalidParameter("alpha * K must be an integer");
    TwoGroupConfig cfg;
    cfg.cells = cells;
    cfg.users = users;
    cfg.alpha = alpha;
    cfg.omega = omega;
    cfg.k1 = users * alpha.num / alpha.den;
    cfg.k2 = users - cfg.k1;
    if (cfg.k1 < 1 || cfg.k2 < 1)
        throw InvalidParameter("both priority groups must be populated");
    return cfg;
}

SplitBounds bounds(std::int64_t total, const TwoGroupConfig& cfg) {
    require_feasible(total, cfg);
    SplitBounds sb;
    sb.lo = std::max(cfg.k1, total - cfg.cells * cfg.k2 / 3);
    sb.hi = std::min(total - cfg.k2, cfg.cells * cfg.k1 / 3);
    for (std::int64_t t = sb.lo; t <= sb.hi; t += 2) sb.candidates.push_back(t);
    sb.interior_candidates.assign(sb.candidates.begin(),
                                  sb.candidates.empty() ? sb.candidates.end()
                                                        : sb.candidates.end() - 1);
    return sb;
}

Rational g(std::int64_t t, std::int64_t total, const TwoGroupConfig& cfg) {
    const SplitBounds sb = bounds(total, cfg);
    if (t < sb.lo || t >= sb.hi || (t - sb.lo) % 2 != 0)
        throw DomainError("split is outside S1(T)");
    const int k = chi(t, cfg.k1) - chi(total - t - 2, cfg.k2);
    return scale_pow3(Rational(cfg.omega.den - cfg.omega.num, cfg.omega.num), k);
}

std::int64_t rho(std::int64_t total, const TwoGroupConfig& cfg) {
    const SplitBounds sb = bounds(total, cfg);
    const Rational one(1);
    if (sb.interior_candidates.empty() || g(sb.lo, total, cfg) > one) return sb.lo;
    if (g(sb.hi - 2, total, cfg) < one) return sb.hi;
    for (std::int64_t t : sb.interior_candidates)
        if (g(t, total, cfg) >= one) return t;
    return sb.hi;  // unreachable: g is nondecreasing over S1
}

std::int64_t mu(std::int64_t total, const TwoGroupConfig& cfg) {
    if (!omega_log3_integral(cfg))
        throw DomainError("optimal split is unique when log3(w/(1-w)) is not an integer");
    const SplitBounds sb = bounds(total, cfg);
    const Rational one(1);
    if (sb.interior_candidates.empty() || g(sb.lo, total, cfg) > one) return sb.lo;
    if (g(sb.hi - 2, total, cfg) < one) return sb.hi;
    // Largest tied split; the full maximizer set is {rho, rho+2, ..., mu}.
    std::int64_t last = sb.lo;
    for (std::int64_t t : sb.interior_candidates)
        if (g(t, total, cfg) <= one) last = t;
    return last + 2;
}

bool omega_log3_integral(const TwoGroupConfig& cfg) {
    // 3^k * (den - num) == num for some k >= 0.
    std::int64_t lhs = cfg.omega.den - cfg.omega.num;
    while (lhs <= cfg.omega.num) {
        if (lhs == cfg.omega.num) return true;
        lhs *= 3;
    }
    return false;
}

int omega_log3_ceil(const TwoGroupConfig& cfg) {
    std::int64_t lhs = cfg.omega.den - cfg.omega.num;
    int s = 0;
    while (lhs < cfg.omega.num) { lhs *= 3; ++s; }
    return s;
}

std::int64_t rho_closed_form(std::int64_t total, const TwoGroupConfig& cfg) {
    require_feasible(total, cfg);
    const int m = order_of(cfg.cells);
    const std::int64_t cap1 = cfg.cells * cfg.k1 / 3;
    if (total == cfg.users) return cfg.k1;
    if (total == cfg.cells * cfg.users / 3) return cap1;

    const int s = omega_log3_ceil(cfg);
    if (pow3(s) >= cfg.cells / 3)
        return total <= cfg.k2 + cap1 ? total - cfg.k2 : cap1;

    const std::int64_t upper = cap1 + cfg.cells / pow3(s + 1) * cfg.k2;
    if (total <= cfg.k2 + pow3(s) * cfg.k1) return total - cfg.k2;
    if (total >= upper) return cap1;

    // phi(T) with V(T) the first tree level whose capacity covers T.
    std::int64_t v = 0;
    while (total > pow3(static_cast<int>(v) + s) * cfg.k1 + pow3(static_cast<int>(v)) * cfg.k2)
        ++v;
    const std::int64_t pivot =
        pow3(static_cast<int>(v) + s - 1) * cfg.k1 + pow3(static_cast<int>(v)) * cfg.k2;
    (void)m;
    if (total <= pivot) return pow3(static_cast<int>(v) + s - 1) * cfg.k1;
    return total - pow3(static_cast<int>(v)) * cfg.k2;
}

namespace {

void check_pair(const PilotVector& p1, const PilotVector& p2,
                const TwoGroupConfig& cfg) {
    if (p1.users != cfg.k1 || p1.cells != cfg.cells)
        throw ShapeError("first vector does not belong to the preferred group");
    if (p2.users != cfg.k2 || p2.cells != cfg.cells)
        throw ShapeError("second vector does not belong to the regular group");
}

}  // namespace

double c_wsr(const PilotVector& p1, const PilotVector& p2,
             const DepthRates& rates, const TwoGroupConfig& cfg) {
    check_pair(p1, p2, cfg);
    const double w = cfg.omega.value();
    return w * c_sum(p1, rates) + (1.0 - w) * c_sum(p2, rates);
}

double c_net_wsr(const PilotVector& p1, const PilotVector& p2,
                 const DepthRates& rates, const TwoGroupConfig& cfg,
                 double n_coh) {
    if (!(n_coh > 0.0)) throw InvalidParameter("normalized coherence time must be positive");
    const double total = static_cast<double>(n_pil(p1) + n_pil(p2));
    return (n_coh - total) / n_coh * c_wsr(p1, p2, rates, cfg);
}

double wsr_bar(std::int64_t total, const DepthRates& rates,
               const TwoGroupConfig& cfg) {
    const std::int64_t r = rho(total, cfg);
    return c_wsr(optimal_fixed_length(r, cfg.k1, cfg.cells),
                 optimal_fixed_length(total - r, cfg.k2, cfg.cells), rates, cfg);
}

double delta(std::int64_t total, const DepthRates& rates,
             const TwoGroupConfig& cfg) {
    require_feasible(total, cfg);
    if (total > cfg.cells * cfg.users / 3 - 2)
        throw DomainError("no increment past the maximum pilot length");
    const int m = order_of(cfg.cells);
    const double w = cfg.omega.value();
    const std::int64_t r = rho(total, cfg);
    const int d1 = chi(r, cfg.k1);
    const int d2 = chi(total - r, cfg.k2);
    // Per-cell marginal gain of deepening one leaf at depth d.
    const auto increment = [&](int d, double weight) {
        return weight / static_cast<double>(pow3(d)) *
               (rates.rates[d + 1] - rates.rates[d]);
    };
    const int s = omega_log3_ceil(cfg);
    const std::int64_t mult =
        pow3(s + 1) >= cfg.cells ? 1 : cfg.cells / pow3(s + 1);
    const std::int64_t cap = cfg.cells * cfg.k1 / 3 + mult * cfg.k2;
    if (total >= cap || d1 + 1 >= m) return increment(d2, 1.0 - w);
    if (d2 + 1 >= m) return increment(d1, w);
    return std::max(increment(d1, w), increment(d2, 1.0 - w));
}

Thresholds thresholds(const DepthRates& rates, const TwoGroupConfig& cfg) {
    const std::int64_t n_max = (cfg.cells * cfg.users / 3 - cfg.users) / 2;
    Thresholds th;
    th.values.push_back(0.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        // Boundary where the optimal total steps from T-2 to T = 2n+K:
        // the crossing of the net-WSR curves for the two lengths.
        const std::int64_t total = 2 * n + cfg.users;
        const double value =
            (static_cast<double>(total) +
             2.0 * wsr_bar(total - 2, rates, cfg) / delta(total - 2, rates, cfg)) /
            static_cast<double>(cfg.users);
        th.values.push_back(value);
    }
    th.values.push_back(std::numeric_limits<double>::infinity());
    for (std::size_t i = 1; i < th.values.size(); ++i)
        if (th.values[i] < th.values[i - 1]) th.nondecreasing = false;
    return th;
}

TwoGroupSolution optimize(double n_coh, const DepthRates& rates,
                          const TwoGroupConfig& cfg) {
    if (!(n_coh > 0.0)) throw InvalidParameter("normalized coherence time must be positive");
    const Thresholds th = thresholds(rates, cfg);
    const double x = n_coh / static_cast<double>(cfg.users);
    std::int64_t n = 0;
    while (n + 1 < static_cast<std::int64_t>(th.values.size()) - 1 &&
           x >= th.values[n + 1])
        ++n;
    TwoGroupSolution sol;
    sol.n_index = n;
    sol.total = 2 * n + cfg.users;
    sol.split = rho(sol.total, cfg);
    sol.p1 = optimal_fixed_length(sol.split, cfg.k1, cfg.cells);
    sol.p2 = optimal_fixed_length(sol.total - sol.split, cfg.k2, cfg.cells);
    sol.wsr = c_wsr(sol.p1, sol.p2, rates, cfg);
    sol.net_wsr = c_net_wsr(sol.p1, sol.p2, rates, cfg, n_coh);
    sol.feasible = n_coh > static_cast<double>(sol.total);
    return sol;
}

}  // namespace pilotplan
