// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "mer/criteria.hpp"
#include "mer/optimize.hpp"

using namespace mer;

TEST_CASE("weight parametrization saturates the budget for every split") {
  const SystemConfig cfg(2, 2, 10.0, db_to_linear(12.0));
  const auto corr = build_constant_correlation(0.5, 2);
  for (double alpha : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const auto alloc = allocation_from_weights(cfg, corr, {alpha, 1.0 - alpha});
    CHECK(relay_power_used(alloc, corr, cfg) ==
          doctest::Approx(cfg.relay_power()).epsilon(1e-12));
  }
  CHECK(allocation_from_weights(cfg, corr, {1.0, 0.0}).gains(0) ==
        doctest::Approx(mer_allocation(cfg, corr).gains(0)).epsilon(1e-15));
}

TEST_CASE("uncorrelated symmetric link wants both modes") {
  const SystemConfig cfg(2, 2, 10.0, 10.0);
  const auto corr = build_constant_correlation(0.0, 2);
  const auto res = optimize_allocation(cfg, corr, 100000, 33);
  CHECK(res.converged);
  CHECK(res.alpha > 0.05);
  CHECK(res.alpha < 0.95);

  // grid-scan oracle over alpha in steps of 0.05, same seed
  double best_grid = -1.0, best_alpha = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double a = i / 20.0;
    const double c = capacity_of_allocation(
                         cfg, corr, allocation_from_weights(cfg, corr, {a, 1.0 - a}),
                         100000, 33)
                         .mean;
    if (c > best_grid) {
      best_grid = c;
      best_alpha = a;
    }
  }
  CHECK(std::abs(res.alpha - best_alpha) < 0.06);
  CHECK(res.capacity.mean >= best_grid - 1e-9);

  const auto mer = capacity_of_allocation(cfg, corr, mer_allocation(cfg, corr),
                                          100000, 33);
  CHECK(res.capacity.mean - mer.mean >
        3.0 * std::hypot(res.capacity.std_error, mer.std_error));
}

TEST_CASE("deep in the optimality region the search stays on the top mode") {
  // large correlation, low relay power
  const SystemConfig cfg(2, 2, 10.0, db_to_linear(0.0));
  const auto corr = build_constant_correlation(0.8, 2);
  const auto res = optimize_allocation(cfg, corr, 100000, 91);
  CHECK(res.converged);
  CHECK(res.alpha >= 0.99);
  const auto mer = capacity_of_allocation(cfg, corr, mer_allocation(cfg, corr),
                                          100000, 91);
  CHECK(std::abs(res.capacity.mean - mer.mean) <=
        3.0 * std::hypot(res.capacity.std_error, mer.std_error));
}

TEST_CASE("single relay antenna is returned directly") {
  const SystemConfig cfg(2, 1, 10.0, 10.0);
  const auto corr = build_constant_correlation(0.0, 1);
  const auto res = optimize_allocation(cfg, corr, 1000, 1);
  CHECK(res.converged);
  CHECK(res.alpha == 1.0);
  CHECK(res.best_alloc.gains(0) ==
        doctest::Approx(10.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("same seed reproduces the whole trajectory") {
  const SystemConfig cfg(2, 2, 10.0, db_to_linear(14.0));
  const auto corr = build_constant_correlation(0.5, 2);
  const auto a = optimize_allocation(cfg, corr, 20000, 7);
  const auto b = optimize_allocation(cfg, corr, 20000, 7);
  CHECK(a.alpha == b.alpha);
  CHECK(a.capacity.mean == b.capacity.mean);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("three relay antennas: coordinate search beats single-mode transmission") {
  const SystemConfig cfg(2, 3, 10.0, 10.0);
  const auto corr = build_constant_correlation(0.0, 3);
  const auto res = optimize_allocation(cfg, corr, 50000, 13);
  const auto mer = capacity_of_allocation(cfg, corr, mer_allocation(cfg, corr),
                                          50000, 13);
  CHECK(res.capacity.mean - mer.mean >
        3.0 * std::hypot(res.capacity.std_error, mer.std_error));
  double total_weight = 0.0;
  for (double w : res.weights) {
    CHECK(w >= 0.0);
    total_weight += w;
  }
  CHECK(total_weight == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("capacity_of_allocation delegates to the ergodic estimator") {
  const SystemConfig cfg(2, 2, 10.0, 10.0);
  const auto corr = build_constant_correlation(0.5, 2);
  SUBCASE("zero allocation") {
    const auto est =
        capacity_of_allocation(cfg, corr, {arma::vec{0.0, 0.0}}, 1000, 1);
    CHECK(est.mean == 0.0);
  }
  SUBCASE("MER allocation equals the direct estimate") {
    const auto alloc = mer_allocation(cfg, corr);
    const auto a = capacity_of_allocation(cfg, corr, alloc, 50000, 3);
    const auto b = estimate_ergodic_capacity(cfg, corr, alloc, 50000, 3);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
  }
  SUBCASE("quadrupling the samples halves the standard error") {
    const auto alloc = mer_allocation(cfg, corr);
    const auto a = capacity_of_allocation(cfg, corr, alloc, 50000, 3);
    const auto b = capacity_of_allocation(cfg, corr, alloc, 200000, 3);
    const double ratio = b.std_error / a.std_error;
    CHECK(ratio >= 0.4);
    CHECK(ratio <= 0.6);
  }
}

TEST_CASE("insufficient sampling budget is reported as non-convergence") {
  // equal eigenvalues and a tiny sample count: the objective is flat in
  // alpha relative to the Monte Carlo noise
  const SystemConfig cfg(2, 2, 0.1, 0.1);
  const auto corr = build_constant_correlation(0.0, 2);
  const auto res = optimize_allocation(cfg, corr, 64, 5);
  CHECK_FALSE(res.converged);
  CHECK_FALSE(res.diagnostics.empty());
}
