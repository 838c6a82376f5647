// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <optional>

namespace mer {

struct Eigensystem {
  arma::cx_mat vectors;  // unitary, columns are eigenvectors
  arma::vec values;      // descending
};

/// Hermitian eigendecomposition with eigenvalues in descending order and a
/// deterministic eigenvector convention: each vector's first significant
/// component is made real-positive, and within a degenerate eigenvalue group
/// the basis is rebuilt from projected standard basis vectors and ordered
/// lexicographically. The identity matrix yields identity eigenvectors.
/// Throws std::invalid_argument if the input deviates from Hermitian by more
/// than 1e-10.
Eigensystem eigendecompose(const arma::cx_mat& hermitian);

/// Antenna correlation at the relay: a Hermitian PSD matrix together with
/// its ordered eigensystem.
class RelayCorrelation {
 public:
  explicit RelayCorrelation(arma::cx_mat sigma,
                            std::optional<double> rho = std::nullopt);

  const arma::cx_mat& sigma() const { return sigma_; }
  const arma::cx_mat& eigenvectors() const { return eig_.vectors; }
  const arma::vec& eigenvalues() const { return eig_.values; }
  double eigenvalue(int i) const { return eig_.values(i); }
  int size() const { return static_cast<int>(sigma_.n_rows); }

  /// Generator parameter, present only for constant-correlation matrices.
  std::optional<double> rho() const { return rho_; }

  /// Principal Hermitian square root of sigma.
  arma::cx_mat sqrt() const;

 private:
  arma::cx_mat sigma_;
  Eigensystem eig_;
  std::optional<double> rho_;
};

/// Unit-diagonal matrix with every off-diagonal entry rho, 0 <= rho < 1.
/// For n = 2 the eigenvalues are exactly {1+rho, 1-rho}.
RelayCorrelation build_constant_correlation(double rho, int n_relay);

}  // namespace mer
