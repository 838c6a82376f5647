// SPDX-License-Identifier: Apache-2.0
#include "mer/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "mer/rng.hpp"

namespace mer {

void sample_channel_into(ChannelDraw& draw, const SystemConfig& config,
                         std::uint64_t seed, std::uint64_t stream) {
  const arma::uword n_r = config.relay_antennas();
  const arma::uword n_s = config.source_antennas();
  if (draw.h1w.n_rows != n_r || draw.h1w.n_cols != n_s) draw.h1w.set_size(n_r, n_s);
  if (draw.h2w.n_elem != n_r) draw.h2w.set_size(n_r);

  rng::Stream rng(seed, stream);
  // fixed consumption order: H1w column-major, then h2w
  arma::cx_double* h1 = draw.h1w.memptr();
  for (arma::uword i = 0; i < n_r * n_s; ++i) h1[i] = rng.complex_gaussian();
  arma::cx_double* h2 = draw.h2w.memptr();
  for (arma::uword j = 0; j < n_r; ++j) h2[j] = rng.complex_gaussian();
}

ChannelDraw sample_channel(const SystemConfig& config, std::uint64_t seed,
                           std::uint64_t stream) {
  ChannelDraw draw;
  sample_channel_into(draw, config, seed, stream);
  return draw;
}

double relay_power_used(const EigenPowerAllocation& alloc,
                        const RelayCorrelation& corr,
                        const SystemConfig& config) {
  const arma::vec& lam = corr.eigenvalues();
  if (alloc.gains.n_elem != lam.n_elem)
    throw std::invalid_argument("relay_power_used: allocation size mismatch");
  return config.source_power() * arma::dot(lam, alloc.gains) +
         config.noise_power() * arma::accu(alloc.gains);
}

double relay_power_used_transformed(const arma::cx_mat& g_hat,
                                    const RelayCorrelation& corr,
                                    const SystemConfig& config) {
  const arma::vec& lam = corr.eigenvalues();
  if (g_hat.n_rows != lam.n_elem || g_hat.n_cols != lam.n_elem)
    throw std::invalid_argument("relay_power_used_transformed: size mismatch");
  double tr1 = 0.0, tr2 = 0.0;
  for (arma::uword j = 0; j < lam.n_elem; ++j) {
    const double d = g_hat(j, j).real();
    tr1 += d / lam(j);
    tr2 += d / (lam(j) * lam(j));
  }
  return config.source_power() * tr1 + config.noise_power() * tr2;
}

arma::cx_mat hermitian_sqrt(const arma::cx_mat& psd) {
  Eigensystem eig = eigendecompose(psd);
  const double scale = std::max(std::abs(eig.values(0)), 1.0);
  if (eig.values.min() < -1e-10 * scale)
    throw std::invalid_argument("hermitian_sqrt: matrix is not positive semidefinite");
  const arma::vec clamped = arma::clamp(eig.values, 0.0, arma::datum::inf);
  return eig.vectors * arma::diagmat(arma::sqrt(clamped)) * eig.vectors.t();
}

RelayPrecoder precoder_from_allocation(const EigenPowerAllocation& alloc,
                                       const RelayCorrelation& corr) {
  const arma::cx_mat& u = corr.eigenvectors();
  if (alloc.gains.n_elem != u.n_rows)
    throw std::invalid_argument("precoder_from_allocation: size mismatch");
  if (alloc.gains.min() < 0.0)
    throw std::invalid_argument("precoder_from_allocation: negative gain");
  RelayPrecoder p;
  p.u_g = u;
  p.g = u * arma::diagmat(arma::conv_to<arma::cx_vec>::from(alloc.gains)) * u.t();
  p.f = u * arma::diagmat(arma::conv_to<arma::cx_vec>::from(arma::sqrt(alloc.gains))) * u.t();
  const arma::vec lam2 = arma::square(corr.eigenvalues());
  p.g_hat = arma::diagmat(arma::conv_to<arma::cx_vec>::from(alloc.gains % lam2));
  return p;
}

arma::cx_mat unequal_precoder(const RelayCorrelation& receive_corr,
                              const RelayCorrelation& transmit_corr,
                              const arma::vec& gains) {
  if (receive_corr.size() != transmit_corr.size() ||
      gains.n_elem != static_cast<arma::uword>(receive_corr.size()))
    throw std::invalid_argument("unequal_precoder: dimension mismatch");
  return transmit_corr.eigenvectors() *
         arma::diagmat(arma::conv_to<arma::cx_vec>::from(gains)) *
         receive_corr.eigenvectors().t();
}

double instantaneous_capacity_with_root(const ChannelDraw& draw,
                                        const arma::cx_mat& g_hat_root,
                                        const SystemConfig& config) {
  const arma::uword n_r = draw.h2w.n_elem;
  const arma::uword n_s = draw.h1w.n_cols;
  if (n_r > 64)
    throw std::invalid_argument("instantaneous_capacity_with_root: n_R too large");

  // u = h2w * root, on the stack; root is column-major
  arma::cx_double u[64];
  const arma::cx_double* h2 = draw.h2w.memptr();
  const arma::cx_double* root = g_hat_root.memptr();
  double denom_quad = 0.0;
  for (arma::uword j = 0; j < n_r; ++j) {
    arma::cx_double acc(0.0, 0.0);
    const arma::cx_double* col = root + j * n_r;
    for (arma::uword k = 0; k < n_r; ++k) acc += h2[k] * col[k];
    u[j] = acc;
    denom_quad += std::norm(acc);
  }
  double num = 0.0;
  const arma::cx_double* h1 = draw.h1w.memptr();
  for (arma::uword i = 0; i < n_s; ++i, h1 += n_r) {
    arma::cx_double acc(0.0, 0.0);
    for (arma::uword j = 0; j < n_r; ++j) acc += u[j] * h1[j];
    num += std::norm(acc);
  }
  const double ratio =
      config.snr() * num / (config.source_antennas() * (1.0 + denom_quad));
  return std::log1p(ratio);
}

double instantaneous_capacity_matrix(const ChannelDraw& draw,
                                     const arma::cx_mat& g_hat,
                                     const SystemConfig& config) {
  return instantaneous_capacity_with_root(draw, hermitian_sqrt(g_hat), config);
}

double instantaneous_capacity_eigen(const ChannelDraw& draw,
                                    const EigenPowerAllocation& alloc,
                                    const RelayCorrelation& corr,
                                    const SystemConfig& config) {
  const arma::vec& lam = corr.eigenvalues();
  const arma::uword n_r = lam.n_elem;
  const arma::uword n_s = draw.h1w.n_cols;

  // u_j = h2w_j sqrt(lambda^G_j) lambda^Sigma_j
  arma::cx_double u[64];
  if (n_r > 64) throw std::invalid_argument("instantaneous_capacity_eigen: n_R too large");
  const arma::cx_double* h2 = draw.h2w.memptr();
  const double* gains = alloc.gains.memptr();
  const double* lam_p = lam.memptr();
  double denom_quad = 0.0;
  for (arma::uword j = 0; j < n_r; ++j) {
    u[j] = h2[j] * (std::sqrt(gains[j]) * lam_p[j]);
    denom_quad += std::norm(u[j]);
  }
  double num = 0.0;
  const arma::cx_double* h1 = draw.h1w.memptr();
  for (arma::uword i = 0; i < n_s; ++i, h1 += n_r) {
    arma::cx_double acc(0.0, 0.0);
    for (arma::uword j = 0; j < n_r; ++j) acc += u[j] * h1[j];
    num += std::norm(acc);
  }
  const double ratio =
      config.snr() * num / (config.source_antennas() * (1.0 + denom_quad));
  return std::log1p(ratio);
}

double instantaneous_capacity_scalar(const arma::vec& x, double y,
                                     const EigenPowerAllocation& alloc,
                                     const RelayCorrelation& corr,
                                     const SystemConfig& config) {
  const arma::vec& lam = corr.eigenvalues();
  double s = 0.0;
  for (arma::uword j = 0; j < lam.n_elem; ++j)
    s += alloc.gains(j) * lam(j) * lam(j) * x(j);
  return std::log1p(s * (1.0 + config.snr() * y)) - std::log1p(s);
}

}  // namespace mer
