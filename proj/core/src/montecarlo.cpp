// SPDX-License-Identifier: Apache-2.0
#include "mer/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mer/rng.hpp"
#include "mer/specfun.hpp"

namespace mer {
namespace {

McEstimate halved(const Welford& acc) {
  McEstimate e = acc.estimate();
  e.mean *= 0.5;
  e.std_error *= 0.5;
  return e;
}

// Scalar draw layout per stream: X_1..X_nR, then Y as the mean of n_S
// unit exponentials.
struct ScalarDraw {
  arma::vec x;
  double y = 0.0;
};

void sample_scalar_into(ScalarDraw& d, int n_relay, int n_source,
                        std::uint64_t seed, std::uint64_t stream) {
  if (d.x.n_elem != static_cast<arma::uword>(n_relay)) d.x.set_size(n_relay);
  rng::Stream rng(seed, stream);
  for (int j = 0; j < n_relay; ++j) d.x(j) = rng.exponential();
  double sum = 0.0;
  for (int i = 0; i < n_source; ++i) sum += rng.exponential();
  d.y = sum / n_source;
}

}  // namespace

McEstimate estimate_ergodic_capacity(const SystemConfig& config,
                                     const RelayCorrelation& corr,
                                     const EigenPowerAllocation& alloc,
                                     std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 2)
    throw std::invalid_argument("estimate_ergodic_capacity: need n_samples >= 2");
  return halved(accumulate_over_draws(config, n_samples, seed,
                                      [&](const ChannelDraw& draw) {
                                        return instantaneous_capacity_eigen(
                                            draw, alloc, corr, config);
                                      }));
}

McEstimate estimate_ergodic_capacity(const SystemConfig& config,
                                     const arma::cx_mat& g_hat,
                                     std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 2)
    throw std::invalid_argument("estimate_ergodic_capacity: need n_samples >= 2");
  const arma::cx_mat root = hermitian_sqrt(g_hat);
  return halved(accumulate_over_draws(config, n_samples, seed,
                                      [&](const ChannelDraw& draw) {
                                        return instantaneous_capacity_with_root(
                                            draw, root, config);
                                      }));
}

McEstimate estimate_ergodic_capacity_scalar(const SystemConfig& config,
                                            const RelayCorrelation& corr,
                                            const EigenPowerAllocation& alloc,
                                            std::uint64_t n_samples,
                                            std::uint64_t seed) {
  if (n_samples < 2)
    throw std::invalid_argument("estimate_ergodic_capacity_scalar: need n_samples >= 2");
  const int n_r = config.relay_antennas();
  const int n_s = config.source_antennas();
  Welford acc = accumulate_chunked(
      n_samples, [&](std::uint64_t b, std::uint64_t e, Welford& w) {
        ScalarDraw d;
        for (std::uint64_t s = b; s < e; ++s) {
          sample_scalar_into(d, n_r, n_s, seed, s);
          w.add(instantaneous_capacity_scalar(d.x, d.y, alloc, corr, config));
        }
      });
  return halved(acc);
}

RotationInvarianceCheck check_rotation_invariance(const SystemConfig& config,
                                                  const arma::cx_mat& g_hat,
                                                  std::uint64_t n_samples,
                                                  std::uint64_t seed) {
  RotationInvarianceCheck r;
  r.full = estimate_ergodic_capacity(config, g_hat, n_samples, seed);
  const Eigensystem eig = eigendecompose(g_hat);
  const arma::cx_mat diag =
      arma::diagmat(arma::conv_to<arma::cx_vec>::from(
          arma::clamp(eig.values, 0.0, arma::datum::inf)));
  r.diagonal = estimate_ergodic_capacity(config, diag, n_samples, seed);
  r.diff = std::abs(r.full.mean - r.diagonal.mean);
  r.combined_se = std::hypot(r.full.std_error, r.diagonal.std_error);
  r.pass = r.diff <= 3.0 * r.combined_se;
  return r;
}

McEstimate finite_difference_derivative(const SystemConfig& config,
                                        const RelayCorrelation& corr,
                                        double total_gain, double p_step,
                                        std::uint64_t n_samples,
                                        std::uint64_t seed, bool central) {
  if (!(p_step > 0.0) || !(p_step < total_gain) ||
      (central && !(2.0 * p_step <= total_gain)))
    throw std::domain_error("finite_difference_derivative: need 0 < p_step < P");
  if (corr.size() < 2)
    throw std::domain_error("finite_difference_derivative: needs n_R >= 2");
  if (n_samples < 2)
    throw std::invalid_argument("finite_difference_derivative: need n_samples >= 2");

  const arma::vec& lam = corr.eigenvalues();
  const double l1sq = lam(0) * lam(0);
  const double l2sq = lam(1) * lam(1);
  const double gamma = config.snr();
  const int n_s = config.source_antennas();
  const int n_r = config.relay_antennas();

  const auto capacity = [&](double p, double x1, double x2, double y) {
    const double s = (total_gain - p) * l1sq * x1 + p * l2sq * x2;
    return std::log1p(s * (1.0 + gamma * y)) - std::log1p(s);
  };

  Welford acc = accumulate_chunked(
      n_samples, [&](std::uint64_t b, std::uint64_t e, Welford& w) {
        ScalarDraw d;
        for (std::uint64_t s = b; s < e; ++s) {
          sample_scalar_into(d, n_r, n_s, seed, s);
          const double c0 = capacity(0.0, d.x(0), d.x(1), d.y);
          const double c1 = capacity(p_step, d.x(0), d.x(1), d.y);
          double diff;
          if (central) {
            // second-order one-sided stencil; p < 0 is outside the domain
            const double c2 = capacity(2.0 * p_step, d.x(0), d.x(1), d.y);
            diff = (4.0 * c1 - c2 - 3.0 * c0) / (2.0 * p_step);
          } else {
            diff = (c1 - c0) / p_step;
          }
          w.add(diff);
        }
      });
  return acc.estimate();
}

YDistributionReport check_y_distribution(int n_source, std::uint64_t n_samples,
                                         std::uint64_t seed) {
  if (n_source < 1)
    throw std::invalid_argument("check_y_distribution: need n_source >= 1");
  if (n_samples < 2)
    throw std::invalid_argument("check_y_distribution: need n_samples >= 2");

  std::vector<double> ys(n_samples);
  Welford acc;
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    rng::Stream rng(seed, s);
    double sum = 0.0;
    for (int i = 0; i < n_source; ++i) sum += rng.exponential();
    ys[s] = sum / n_source;
    acc.add(ys[s]);
  }
  std::sort(ys.begin(), ys.end());
  double ks = 0.0;
  const double n = static_cast<double>(n_samples);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double cdf = erlang_cdf(n_source, ys[i]);
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - cdf));
  }
  return {acc.mean(), acc.variance(), ks, n_samples};
}

}  // namespace mer
