// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mer/channel.hpp"
#include "mer/correlation.hpp"
#include "mer/montecarlo.hpp"
#include "mer/system.hpp"

namespace mer {

struct OptimizationResult {
  EigenPowerAllocation best_alloc;
  McEstimate capacity;  // half-duplex factor applied
  double alpha = 1.0;   // dominant-mode share of the budget (n_R == 2)
  std::vector<double> weights;  // per-mode budget shares, sum to 1
  int iterations = 0;
  bool converged = false;
  std::string diagnostics;
};

/// Budget-saturating allocation for given per-mode shares: mode j receives
/// gain weights[j] * P_R / (N_0 + P_S lambda^Sigma_j), which consumes
/// exactly weights[j] * P_R of relay power.
EigenPowerAllocation allocation_from_weights(const SystemConfig& config,
                                             const RelayCorrelation& corr,
                                             const std::vector<double>& weights);

/// Maximizes the Monte Carlo ergodic capacity over constraint-saturating
/// eigenmode splits. All candidate evaluations inside one search share the
/// seed (common random numbers), so the search optimizes a frozen noise-free
/// comparison. n_R = 2 uses golden-section search on the dominant-mode share
/// alpha, larger arrays cyclic pairwise golden-section over the shares.
/// converged is false when the bracket tolerance was not reached or the
/// objective variation across candidates is below the Monte Carlo
/// resolution.
OptimizationResult optimize_allocation(const SystemConfig& config,
                                       const RelayCorrelation& corr,
                                       std::uint64_t mc_samples,
                                       std::uint64_t seed);

/// Ergodic capacity of a fixed allocation; thin wrapper over
/// estimate_ergodic_capacity (half-duplex factor included).
McEstimate capacity_of_allocation(const SystemConfig& config,
                                  const RelayCorrelation& corr,
                                  const EigenPowerAllocation& alloc,
                                  std::uint64_t mc_samples, std::uint64_t seed);

}  // namespace mer
