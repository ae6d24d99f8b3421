// SPDX-License-Identifier: Apache-2.0
#include "pilotplan/channel.hpp"

#include <cmath>
#include <thread>

namespace pilotplan {

double slow_fading(double distance, double gamma) {
    if (!(distance > 0.0))
        throw InvalidParameter("degenerate geometry: user at the base station");
    return std::pow(distance, -gamma);
}

double asymptotic_rate(double beta_home, std::span<const double> beta_interferers) {
    if (beta_interferers.empty())
        throw MonopolyError("monopolized pilot has unbounded rate");
    if (!(beta_home > 0.0)) throw InvalidParameter("nonpositive slow-fading factor");
    double denom = 0.0;
    for (double b : beta_interferers) {
        if (!(b > 0.0)) throw InvalidParameter("nonpositive slow-fading factor");
        denom += b * b;
    }
    return std::log2(1.0 + beta_home * beta_home / denom);
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

DepthRates estimate_depth_rates(const CellGrid& grid, const ChannelParams& params) {
    if (!(params.gamma >= 2.0 && params.gamma <= 4.0))
        throw InvalidParameter("signal decay exponent must lie in [2, 4]");
    if (params.trials < 1) throw InvalidParameter("trial count must be >= 1");

    const int depths = grid.order();
    const CellCoord home = grid.cells().front();
    const Point2D home_bs = grid.unit_center(home);

    // Interfering cell centers per depth, fixed order.
    std::vector<std::vector<Point2D>> interferer_centers(depths);
    for (int d = 0; d < depths; ++d) {
        for (const CellCoord& c : grid.pilot_group(home, d)) {
            if (c == home) continue;
            interferer_centers[d].push_back(grid.unit_center(c));
        }
    }

    // Per-trial rates, keyed by trial index; the reduction below is a
    // plain in-order sum so the result does not depend on worker count.
    const std::int64_t trials = params.trials;
    std::vector<std::vector<double>> per_trial(depths,
                                               std::vector<double>(trials));

    auto run_block = [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> betas;
        for (std::int64_t t = begin; t < end; ++t) {
            std::mt19937_64 rng(splitmix64(params.seed ^ splitmix64(static_cast<std::uint64_t>(t))));
            for (int d = 0; d < depths; ++d) {
                const Point2D ho = grid.sample_unit_offset(rng);
                const Point2D hp{home_bs.x + ho.x, home_bs.y + ho.y};
                const double beta_home =
                    slow_fading(grid.unit_torus_distance(hp, home_bs), params.gamma);
                betas.clear();
                for (const Point2D& c : interferer_centers[d]) {
                    const Point2D o = grid.sample_unit_offset(rng);
                    const Point2D up{c.x + o.x, c.y + o.y};
                    // Contamination strength is governed by the separation of
                    // the two pilot-sharing users, not by the interferer's
                    // distance to the base station.
                    betas.push_back(
                        slow_fading(grid.unit_torus_distance(up, hp), params.gamma));
                }
                per_trial[d][t] = asymptotic_rate(beta_home, betas);
            }
        }
    };

    int workers = params.workers > 0
                      ? params.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers > trials) workers = static_cast<int>(trials);
    if (workers == 1) {
        run_block(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t begin = w * chunk;
            const std::int64_t end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_block, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    DepthRates out;
    out.provenance = {.kind = "monte-carlo",
                      .cells = grid.cell_count(),
                      .gamma = params.gamma,
                      .hole_ratio = grid.hole_ratio(),
                      .trials = trials,
                      .seed = params.seed};
    for (int d = 0; d < depths; ++d) {
        double sum = 0.0;
        for (std::int64_t t = 0; t < trials; ++t) sum += per_trial[d][t];
        const double mean = sum / static_cast<double>(trials);
        double var = 0.0;
        for (std::int64_t t = 0; t < trials; ++t) {
            const double e = per_trial[d][t] - mean;
            var += e * e;
        }
        var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
        out.rates.push_back(mean);
        out.std_errors.push_back(std::sqrt(var / static_cast<double>(trials)));
    }
    return out;
}

DepthRates linear_rate_model(double c0, double slope, int depth_count) {
    if (!(slope > 0.0)) throw InvalidParameter("slope must be positive");
    if (depth_count < 2) throw InvalidParameter("depth count must be >= 2");
    DepthRates out;
    out.provenance = {.kind = "linear", .c0 = c0, .slope = slope};
    for (int i = 0; i < depth_count; ++i) {
        out.rates.push_back(c0 + slope * i);
        out.std_errors.push_back(0.0);
    }
    return out;
}

}  // namespace pilotplan
