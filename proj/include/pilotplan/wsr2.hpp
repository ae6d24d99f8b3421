// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "pilotplan/assignment.hpp"
#include "pilotplan/rational.hpp"

namespace pilotplan {

/// Two priority groups: K1 = alpha*K preferred users and K2 = (1-alpha)*K
/// regular users per cell, weight omega in [1/2, 1) on the preferred group.
struct TwoGroupConfig {
    std::int64_t cells = 0;  // L, power of 3
    std::int64_t users = 0;  // K
    Rational alpha;
    Rational omega;
    std::int64_t k1 = 0;
    std::int64_t k2 = 0;

    static TwoGroupConfig make(std::int64_t cells, std::int64_t users,
                               Rational alpha, Rational omega);
};

struct TwoGroupSolution {
    PilotVector p1, p2;
    std::int64_t total = 0;      // T = n_pil(p1) + n_pil(p2)
    std::int64_t split = 0;      // rho(T), pilots granted to group 1
    double wsr = 0.0;
    double net_wsr = 0.0;
    std::int64_t n_index = 0;    // Delta-interval index, T = 2n + K
    bool feasible = true;        // false when N_coh leaves no data time
};

struct SplitBounds {
    std::int64_t lo = 0;  // B(T)
    std::int64_t hi = 0;  // F(T)
    std::vector<std::int64_t> candidates;          // S0
    std::vector<std::int64_t> interior_candidates; // S1 = S0 \ {F}
};

/// B, F, S0, S1 for a total pilot length T.
SplitBounds bounds(std::int64_t total, const TwoGroupConfig& cfg);

/// g_T(t) = 3^(chi(t,K1) - chi(T-t-2,K2)) * (1-w)/w, exact.
Rational g(std::int64_t t, std::int64_t total, const TwoGroupConfig& cfg);

/// Optimal group-1 pilot length for total length T (lower end of the
/// optimal set; the canonical representative).
std::int64_t rho(std::int64_t total, const TwoGroupConfig& cfg);

/// Upper end of the optimal split set. Only defined when
/// log3(w/(1-w)) is an integer (ties exist exactly then).
std::int64_t mu(std::int64_t total, const TwoGroupConfig& cfg);

/// Case-split closed form for rho; agrees with rho on every feasible T.
std::int64_t rho_closed_form(std::int64_t total, const TwoGroupConfig& cfg);

/// True iff log3(w/(1-w)) is an integer, decided exactly.
bool omega_log3_integral(const TwoGroupConfig& cfg);

/// s = ceil(log3(w/(1-w))), decided exactly.
int omega_log3_ceil(const TwoGroupConfig& cfg);

double c_wsr(const PilotVector& p1, const PilotVector& p2,
             const DepthRates& rates, const TwoGroupConfig& cfg);

double c_net_wsr(const PilotVector& p1, const PilotVector& p2,
                 const DepthRates& rates, const TwoGroupConfig& cfg,
                 double n_coh);

/// Max WSR under total length T, via the closed-form split.
double wsr_bar(std::int64_t total, const DepthRates& rates,
               const TwoGroupConfig& cfg);

/// Increment wsr_bar(T+2) - wsr_bar(T), from the marginal-gain case split.
double delta(std::int64_t total, const DepthRates& rates,
             const TwoGroupConfig& cfg);

/// Threshold sequence Delta_0 ... Delta_{N_L + 1} in units of N_coh/K;
/// first entry 0, last entry +infinity.
struct Thresholds {
    std::vector<double> values;
    bool nondecreasing = true;  // validated, not assumed
};
Thresholds thresholds(const DepthRates& rates, const TwoGroupConfig& cfg);

/// Net-WSR-optimal assignment for a given normalized coherence time.
TwoGroupSolution optimize(double n_coh, const DepthRates& rates,
                          const TwoGroupConfig& cfg);

}  // namespace pilotplan
