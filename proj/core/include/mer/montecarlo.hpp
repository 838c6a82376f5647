// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "mer/channel.hpp"
#include "mer/correlation.hpp"
#include "mer/system.hpp"

namespace mer {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

/// Streaming mean/variance (Welford) with Chan's merge so that chunked and
/// sequential accumulation agree up to floating-point reassociation.
class Welford {
 public:
  void add(double x) {
    ++n_;
    const double d1 = x - mean_;
    mean_ += d1 / static_cast<double>(n_);
    m2_ += d1 * (x - mean_);
  }

  void merge(const Welford& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double delta = o.mean_ - mean_;
    mean_ += delta * nb / (na + nb);
    m2_ += o.m2_ + delta * delta * na * nb / (na + nb);
    n_ += o.n_;
  }

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }
  McEstimate estimate() const { return {mean_, std_error(), n_}; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Samples per independent random stream. Fixed so that estimates are
/// bit-identical no matter how many worker threads run.
inline constexpr std::uint64_t kMcChunk = 16384;

/// Runs fn(begin, end, acc) over [0, n) in fixed chunks, possibly on several
/// threads, and merges the per-chunk accumulators in index order.
template <typename ChunkFn>
Welford accumulate_chunked(std::uint64_t n, ChunkFn&& fn) {
  const std::uint64_t chunks = (n + kMcChunk - 1) / kMcChunk;
  std::vector<Welford> acc(chunks);
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(chunks, hw ? hw : 1));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c)
      fn(c * kMcChunk, std::min(n, (c + 1) * kMcChunk), acc[c]);
  } else {
    std::atomic<std::uint64_t> next{0};
    auto run = [&] {
      for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
        fn(c * kMcChunk, std::min(n, (c + 1) * kMcChunk), acc[c]);
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
  }
  Welford total;
  for (const Welford& a : acc) total.merge(a);
  return total;
}

/// Mean of kernel(draw) over independent channel realizations; sample s uses
/// stream index s of the given seed.
template <typename Kernel>
Welford accumulate_over_draws(const SystemConfig& config, std::uint64_t n,
                              std::uint64_t seed, Kernel&& kernel) {
  return accumulate_chunked(n, [&](std::uint64_t b, std::uint64_t e, Welford& w) {
    ChannelDraw draw;
    for (std::uint64_t s = b; s < e; ++s) {
      sample_channel_into(draw, config, seed, s);
      w.add(kernel(draw));
    }
  });
}

/// Ergodic capacity of an eigenmode allocation, half-duplex factor applied.
McEstimate estimate_ergodic_capacity(const SystemConfig& config,
                                     const RelayCorrelation& corr,
                                     const EigenPowerAllocation& alloc,
                                     std::uint64_t n_samples, std::uint64_t seed);

/// Ergodic capacity of a general transformed gain matrix, half-duplex factor
/// applied. The matrix square root is taken once, outside the sampling loop.
McEstimate estimate_ergodic_capacity(const SystemConfig& config,
                                     const arma::cx_mat& g_hat,
                                     std::uint64_t n_samples, std::uint64_t seed);

/// Same ergodic mean through the scalar (X, Y) reduction instead of matrix
/// draws. Distributionally identical to the eigen-kernel estimate.
McEstimate estimate_ergodic_capacity_scalar(const SystemConfig& config,
                                            const RelayCorrelation& corr,
                                            const EigenPowerAllocation& alloc,
                                            std::uint64_t n_samples,
                                            std::uint64_t seed);

struct RotationInvarianceCheck {
  McEstimate full;      // E C(G_hat)
  McEstimate diagonal;  // E C(diag of descending eigenvalues)
  double diff = 0.0;
  double combined_se = 0.0;
  bool pass = false;  // diff <= 3 * combined_se
};

/// Monte Carlo check that replacing G_hat by the diagonal of its descending
/// eigenvalues leaves the ergodic mean unchanged. Both estimates share the
/// seed, so a diagonal input gives diff == 0 exactly.
RotationInvarianceCheck check_rotation_invariance(const SystemConfig& config,
                                                  const arma::cx_mat& g_hat,
                                                  std::uint64_t n_samples,
                                                  std::uint64_t seed);

/// Paired-sample estimate of (C(p_step) - C(0)) / p_step at the MER point:
/// gains (P - p_step, p_step, 0, ...) against (P, 0, ...), common random
/// numbers, no half-duplex factor. Requires 0 < p_step < P. The optional
/// central flag switches to a second-order one-sided stencil (negative p is
/// outside the domain), trading one more kernel evaluation for O(p^2) bias.
McEstimate finite_difference_derivative(const SystemConfig& config,
                                        const RelayCorrelation& corr,
                                        double total_gain, double p_step,
                                        std::uint64_t n_samples,
                                        std::uint64_t seed,
                                        bool central = false);

struct YDistributionReport {
  double mean = 0.0;
  double variance = 0.0;
  double ks_statistic = 0.0;  // empirical CDF vs Gamma(n, n)
  std::uint64_t n_samples = 0;
};

/// Moments and Kolmogorov-Smirnov distance of Y = (1/n) sum |h1w_i|^2
/// against its Gamma(n, n) law.
YDistributionReport check_y_distribution(int n_source, std::uint64_t n_samples,
                                         std::uint64_t seed);

}  // namespace mer
