// SPDX-License-Identifier: Apache-2.0
#include "pilotplan/multigroup.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "pilotplan/error.hpp"

namespace pilotplan {

MultiGroupConfig MultiGroupConfig::make(std::int64_t cells, std::int64_t users,
                                        std::vector<Rational> alphas,
                                        std::vector<Rational> omegas,
                                        bool linear_increments) {
    if (alphas.size() != omegas.size() || alphas.size() < 2)
        throw InvalidParameter("need matching alpha/omega lists for >= 2 groups");
    Rational alpha_sum(0);
    Rational omega_sum(0);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        alpha_sum = Rational(alpha_sum.num * alphas[i].den + alphas[i].num * alpha_sum.den,
                             alpha_sum.den * alphas[i].den);
        omega_sum = Rational(omega_sum.num * omegas[i].den + omegas[i].num * omega_sum.den,
                             omega_sum.den * omegas[i].den);
        if (i > 0 && !(omegas[i] < omegas[i - 1]))
            throw InvalidParameter("weights must strictly decrease with priority index");
    }
    if (alpha_sum != Rational(1) || omega_sum != Rational(1))
        throw InvalidParameter("alpha and omega lists must each sum to 1");

    MultiGroupConfig cfg;
    cfg.cells = cells;
    cfg.users = users;
    cfg.alphas = std::move(alphas);
    cfg.omegas = std::move(omegas);
    cfg.linear_increments = linear_increments;
    for (const Rational& a : cfg.alphas) {
        if ((users * a.num) % a.den != 0)
            throw InvalidParameter("alpha_i * K must be an integer");
        const std::int64_t k = users * a.num / a.den;
        if (k < 1) throw InvalidParameter("every group must be populated");
        cfg.group_users.push_back(k);
    }
    return cfg;
}

std::vector<std::int64_t> greedy_allocate(std::int64_t total,
                                          const MultiGroupConfig& cfg,
                                          const DepthRates& rates) {
    if (!feasible_length(total, cfg.users, cfg.cells))
        throw InvalidLength("total pilot length must be in {K, K+2, ..., LK/3}");
    const int n = cfg.group_count();
    std::vector<std::int64_t> splits(cfg.group_users);

    for (std::int64_t step = 0; step < (total - cfg.users) / 2; ++step) {
        int best = -1;
        Rational best_exact(0);
        double best_value = 0.0;
        for (int i = 0; i < n; ++i) {
            if (splits[i] >= cfg.cells * cfg.group_users[i] / 3) continue;  // saturated
            const int d = chi(splits[i], cfg.group_users[i]);
            if (cfg.linear_increments) {
                const Rational gain = scale_pow3(cfg.omegas[i], -d);
                if (best < 0 || gain > best_exact) { best = i; best_exact = gain; }
            } else {
                const double gain = cfg.omegas[i].value() /
                                    static_cast<double>(pow3(d)) *
                                    (rates.rates[d + 1] - rates.rates[d]);
                if (best < 0 || gain > best_value) { best = i; best_value = gain; }
            }
        }
        splits[best] += 2;
    }
    return splits;
}

double c_wsr(const std::vector<PilotVector>& vectors, const DepthRates& rates,
             const MultiGroupConfig& cfg) {
    if (static_cast<int>(vectors.size()) != cfg.group_count())
        throw ShapeError("one assignment vector per priority group expected");
    double total = 0.0;
    for (int i = 0; i < cfg.group_count(); ++i) {
        if (vectors[i].users != cfg.group_users[i] || vectors[i].cells != cfg.cells)
            throw ShapeError("assignment vector does not belong to its group");
        total += cfg.omegas[i].value() * c_sum(vectors[i], rates);
    }
    return total;
}

MultiGroupSolution optimize(double n_coh, const MultiGroupConfig& cfg,
                            const DepthRates& rates) {
    if (!(n_coh > 0.0)) throw InvalidParameter("normalized coherence time must be positive");
    MultiGroupSolution best;
    double best_net = -std::numeric_limits<double>::infinity();
    for (std::int64_t total = cfg.users; total <= cfg.cells * cfg.users / 3;
         total += 2) {
        const auto splits = greedy_allocate(total, cfg, rates);
        std::vector<PilotVector> vectors;
        for (int i = 0; i < cfg.group_count(); ++i)
            vectors.push_back(
                optimal_fixed_length(splits[i], cfg.group_users[i], cfg.cells));
        const double wsr = c_wsr(vectors, rates, cfg);
        const double net = (n_coh - static_cast<double>(total)) / n_coh * wsr;
        if (net > best_net) {
            best_net = net;
            best.splits = splits;
            best.vectors = std::move(vectors);
            best.total = total;
            best.wsr = wsr;
            best.net_wsr = net;
        }
    }
    best.feasible = n_coh > static_cast<double>(best.total);
    return best;
}

}  // namespace pilotplan
