// SPDX-License-Identifier: Apache-2.0
#include "mer/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mer {
namespace {

constexpr double kBracketTol = 1e-3;
constexpr int kMaxIterations = 200;

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  int evaluations = 0;
  bool converged = false;
  double spread = 0.0;  // max - min of all observed objective values
};

// Golden-section maximization on [0,1]; endpoints are evaluated too so a
// boundary maximum is reported exactly.
template <typename F>
GoldenResult golden_max(F&& f, double tol) {
  constexpr double inv_phi = 0.6180339887498948482;
  GoldenResult r;
  double a = 0.0, b = 1.0;
  double fa = f(a), fb = f(b);
  double u = b - inv_phi * (b - a), fu = f(u);
  double v = a + inv_phi * (b - a), fv = f(v);
  r.evaluations = 4;
  double lo_seen = std::min(std::min(fa, fb), std::min(fu, fv));
  double hi_seen = std::max(std::max(fa, fb), std::max(fu, fv));
  auto best = [&] {
    if (fa >= fu && fa >= fv && fa >= fb) return std::pair{a, fa};
    if (fu >= fa && fu >= fv && fu >= fb) return std::pair{u, fu};
    if (fv >= fa && fv >= fu && fv >= fb) return std::pair{v, fv};
    return std::pair{b, fb};
  };
  for (int i = 0; i < kMaxIterations; ++i) {
    if (b - a < tol) {
      r.converged = true;
      break;
    }
    if (fu < fv) {
      a = u;
      fa = fu;
      u = v;
      fu = fv;
      v = a + inv_phi * (b - a);
      fv = f(v);
    } else {
      b = v;
      fb = fv;
      v = u;
      fv = fu;
      u = b - inv_phi * (b - a);
      fu = f(u);
    }
    ++r.evaluations;
    lo_seen = std::min(lo_seen, std::min(fu, fv));
    hi_seen = std::max(hi_seen, std::max(fu, fv));
  }
  const auto [x, fx] = best();
  r.x = x;
  r.fx = fx;
  r.spread = hi_seen - lo_seen;
  return r;
}

}  // namespace

EigenPowerAllocation allocation_from_weights(const SystemConfig& config,
                                             const RelayCorrelation& corr,
                                             const std::vector<double>& weights) {
  if (weights.size() != static_cast<std::size_t>(corr.size()))
    throw std::invalid_argument("allocation_from_weights: size mismatch");
  EigenPowerAllocation alloc{arma::vec(corr.size())};
  for (int j = 0; j < corr.size(); ++j) {
    if (weights[j] < -1e-12)
      throw std::invalid_argument("allocation_from_weights: negative weight");
    alloc.gains(j) =
        std::max(weights[j], 0.0) * config.relay_power() /
        (config.noise_power() + config.source_power() * corr.eigenvalue(j));
  }
  return alloc;
}

McEstimate capacity_of_allocation(const SystemConfig& config,
                                  const RelayCorrelation& corr,
                                  const EigenPowerAllocation& alloc,
                                  std::uint64_t mc_samples, std::uint64_t seed) {
  return estimate_ergodic_capacity(config, corr, alloc, mc_samples, seed);
}

OptimizationResult optimize_allocation(const SystemConfig& config,
                                       const RelayCorrelation& corr,
                                       std::uint64_t mc_samples,
                                       std::uint64_t seed) {
  const int n_r = corr.size();
  OptimizationResult res;

  const auto objective = [&](const std::vector<double>& weights) {
    return capacity_of_allocation(config, corr,
                                  allocation_from_weights(config, corr, weights),
                                  mc_samples, seed)
        .mean;
  };

  if (n_r == 1) {
    res.weights = {1.0};
    res.alpha = 1.0;
    res.best_alloc = allocation_from_weights(config, corr, res.weights);
    res.capacity = capacity_of_allocation(config, corr, res.best_alloc,
                                          mc_samples, seed);
    res.converged = true;
    res.iterations = 1;
    return res;
  }

  double spread = 0.0;
  if (n_r == 2) {
    const GoldenResult g = golden_max(
        [&](double alpha) {
          return objective({alpha, 1.0 - alpha});
        },
        kBracketTol);
    res.alpha = g.x;
    res.weights = {g.x, 1.0 - g.x};
    res.iterations = g.evaluations;
    res.converged = g.converged;
    spread = g.spread;
  } else {
    // cyclic pairwise golden-section over the budget shares
    std::vector<double> w(n_r, 1.0 / n_r);
    bool bracket_ok = true;
    int evals = 0;
    for (int sweep = 0; sweep < 50; ++sweep) {
      double max_change = 0.0;
      for (int i = 0; i < n_r; ++i) {
        for (int j = i + 1; j < n_r; ++j) {
          const double mass = w[i] + w[j];
          if (mass <= 0.0) continue;
          const GoldenResult g = golden_max(
              [&](double share) {
                std::vector<double> cand = w;
                cand[i] = share * mass;
                cand[j] = (1.0 - share) * mass;
                return objective(cand);
              },
              kBracketTol);
          evals += g.evaluations;
          bracket_ok = bracket_ok && g.converged;
          spread = std::max(spread, g.spread);
          const double ni = g.x * mass;
          max_change = std::max(max_change, std::abs(ni - w[i]));
          w[i] = ni;
          w[j] = mass - ni;
        }
      }
      res.iterations = evals;
      if (max_change < kBracketTol) break;
    }
    res.weights = w;
    res.alpha = w[0];
    res.converged = bracket_ok;
  }

  res.best_alloc = allocation_from_weights(config, corr, res.weights);
  res.capacity =
      capacity_of_allocation(config, corr, res.best_alloc, mc_samples, seed);

  if (res.capacity.std_error > 0.0 && spread < 2.0 * res.capacity.std_error) {
    res.converged = false;
    res.diagnostics =
        "objective variation across the bracket is below the Monte Carlo "
        "resolution; increase mc_samples";
  }
  return res;
}

}  // namespace mer
