// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstdint>

#include "mer/correlation.hpp"
#include "mer/system.hpp"

namespace mer {

/// One realization of the whitened channels: the source-to-relay matrix and
/// the relay-to-destination row vector, all entries i.i.d. CN(0,1).
struct ChannelDraw {
  arma::cx_mat h1w;     // n_R x n_S
  arma::cx_rowvec h2w;  // 1 x n_R
};

/// Reproducible draw: the same (seed, stream) always returns the identical
/// realization, and distinct streams are independent.
ChannelDraw sample_channel(const SystemConfig& config, std::uint64_t seed,
                           std::uint64_t stream);

/// In-place variant for hot loops; resizes the buffers only when needed.
void sample_channel_into(ChannelDraw& draw, const SystemConfig& config,
                         std::uint64_t seed, std::uint64_t stream);

/// Diagonal relay gain spectrum over the eigenmodes of the correlation
/// matrix, lambda^G_j >= 0.
struct EigenPowerAllocation {
  arma::vec gains;

  /// P = sum_j lambda^G_j.
  double total() const { return arma::accu(gains); }
};

/// Relay transmit power P_S sum_j lambda^Sigma_j lambda^G_j
///                      + N_0 sum_j lambda^G_j consumed by an allocation.
double relay_power_used(const EigenPowerAllocation& alloc,
                        const RelayCorrelation& corr,
                        const SystemConfig& config);

/// Same budget evaluated on a transformed gain matrix G_hat:
/// P_S Tr(Lambda^-1 G_hat) + N_0 Tr(Lambda^-2 G_hat).
double relay_power_used_transformed(const arma::cx_mat& g_hat,
                                    const RelayCorrelation& corr,
                                    const SystemConfig& config);

/// Principal Hermitian square root of a PSD matrix. Eigenvalues below
/// -1e-10 raise std::invalid_argument; small negatives are clamped to zero.
arma::cx_mat hermitian_sqrt(const arma::cx_mat& psd);

/// Relay gain matrix assembled from an eigenmode allocation.
struct RelayPrecoder {
  arma::cx_mat f;      // gain matrix applied to the relay input
  arma::cx_mat g;      // F^H F
  arma::cx_mat g_hat;  // transformed gain; diagonal for eigenmode allocations
  arma::cx_mat u_g;    // unitary factor of G (the correlation eigenvectors)
};

/// G = U diag(lambda^G) U^H with U the correlation eigenvectors, F = G^(1/2)
/// (Hermitian), and G_hat diagonal with entries lambda^G_j (lambda^Sigma_j)^2.
RelayPrecoder precoder_from_allocation(const EigenPowerAllocation& alloc,
                                       const RelayCorrelation& corr);

/// F = U_2 diag(gains) U_1^H for distinct receive/transmit correlations;
/// the singular values of the result equal `gains` (given descending
/// nonnegative input).
arma::cx_mat unequal_precoder(const RelayCorrelation& receive_corr,
                              const RelayCorrelation& transmit_corr,
                              const arma::vec& gains);

/// Instantaneous mutual information (nats, before the half-duplex factor)
/// for a general transformed gain matrix G_hat. Uses the principal matrix
/// square root of G_hat.
double instantaneous_capacity_matrix(const ChannelDraw& draw,
                                     const arma::cx_mat& g_hat,
                                     const SystemConfig& config);

/// Hot-path form of the above with the square root precomputed.
double instantaneous_capacity_with_root(const ChannelDraw& draw,
                                        const arma::cx_mat& g_hat_root,
                                        const SystemConfig& config);

/// Same quantity for a diagonal G_hat with entries
/// lambda^G_j (lambda^Sigma_j)^2 given by an eigenmode allocation.
double instantaneous_capacity_eigen(const ChannelDraw& draw,
                                    const EigenPowerAllocation& alloc,
                                    const RelayCorrelation& corr,
                                    const SystemConfig& config);

/// Scalar reduction: capacity as a function of the exponential magnitudes
/// X_j = |h2w_j|^2 and the averaged source fading Y,
/// log(1 + s(1+gamma Y)) - log(1 + s) with s = sum_j lambda^G_j
/// (lambda^Sigma_j)^2 X_j. Distributed identically to the matrix forms.
double instantaneous_capacity_scalar(const arma::vec& x, double y,
                                     const EigenPowerAllocation& alloc,
                                     const RelayCorrelation& corr,
                                     const SystemConfig& config);

}  // namespace mer
