// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "mer/channel.hpp"
#include "mer/criteria.hpp"
#include "mer/montecarlo.hpp"
#include "mer/quadrature.hpp"
#include "mer/specfun.hpp"

using namespace mer;

namespace {

const SystemConfig kCfg(2, 2, 10.0, 10.0);
const RelayCorrelation kCorr = build_constant_correlation(0.5, 2);

void BM_GammaZeroSeries(benchmark::State& state) {
  for (auto _ : state) {
    double v = gamma_zero(0.6);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_GammaZeroSeries);

void BM_GammaZeroContinuedFraction(benchmark::State& state) {
  for (auto _ : state) {
    double v = gamma_zero(7.5);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_GammaZeroContinuedFraction);

void BM_ExpIntegralEn(benchmark::State& state) {
  for (auto _ : state) {
    double v = exp_integral_en(5, 2.5);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ExpIntegralEn);

void BM_ExpectationInvZ(benchmark::State& state) {
  for (auto _ : state) {
    double v = expectation_inv_z(0.625, 2.25, 10.0, 2);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ExpectationInvZ);

void BM_ExactCondition(benchmark::State& state) {
  for (auto _ : state) {
    auto rep = mer_exact_condition(kCfg, kCorr);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_ExactCondition);

void BM_BoundaryBisection(benchmark::State& state) {
  for (auto _ : state) {
    auto b = mer_boundary_pr_db(kCfg, kCorr, MerCriterion::exact);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_BoundaryBisection);

void BM_SampleChannel(benchmark::State& state) {
  ChannelDraw draw;
  std::uint64_t s = 0;
  for (auto _ : state) {
    sample_channel_into(draw, kCfg, 1, s++);
    benchmark::DoNotOptimize(draw.h1w.memptr());
  }
}
BENCHMARK(BM_SampleChannel);

void BM_CapacityEigenKernel(benchmark::State& state) {
  const auto draw = sample_channel(kCfg, 1, 0);
  const EigenPowerAllocation alloc{arma::vec{0.4, 0.2}};
  for (auto _ : state) {
    double v = instantaneous_capacity_eigen(draw, alloc, kCorr, kCfg);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_CapacityEigenKernel);

void BM_CapacityMatrixKernel(benchmark::State& state) {
  const auto draw = sample_channel(kCfg, 1, 0);
  arma::cx_mat g_hat(2, 2, arma::fill::eye);
  g_hat(0, 1) = g_hat(1, 0) = arma::cx_double(0.3, 0.0);
  const arma::cx_mat root = hermitian_sqrt(g_hat);
  for (auto _ : state) {
    double v = instantaneous_capacity_with_root(draw, root, kCfg);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_CapacityMatrixKernel);

void BM_ErgodicEstimate(benchmark::State& state) {
  const EigenPowerAllocation alloc{arma::vec{0.4, 0.2}};
  for (auto _ : state) {
    auto est = estimate_ergodic_capacity(kCfg, kCorr, alloc, state.range(0), 1);
    benchmark::DoNotOptimize(est);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ErgodicEstimate)->Arg(10000)->Arg(100000);

void BM_FiniteDifferenceDerivative(benchmark::State& state) {
  for (auto _ : state) {
    auto est = finite_difference_derivative(kCfg, kCorr, 0.625, 6.25e-4,
                                            state.range(0), 1);
    benchmark::DoNotOptimize(est);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FiniteDifferenceDerivative)->Arg(10000)->Arg(100000);

void BM_Eigendecompose(benchmark::State& state) {
  const auto corr = build_constant_correlation(0.4, 8);
  for (auto _ : state) {
    auto eig = eigendecompose(corr.sigma());
    benchmark::DoNotOptimize(eig.values.memptr());
  }
}
BENCHMARK(BM_Eigendecompose);

}  // namespace

BENCHMARK_MAIN();
