// SPDX-License-Identifier: Apache-2.0
#include "mer/correlation.hpp"

#include <cmath>
#include <stdexcept>

namespace mer {
namespace {

// Rotate v so that its first component with |v_i| > tol is real-positive.
void fix_phase(arma::cx_vec& v) {
  const double tol = 1e-8 * arma::norm(v, "inf");
  for (arma::uword i = 0; i < v.n_elem; ++i) {
    const double m = std::abs(v(i));
    if (m > tol) {
      v *= std::conj(v(i)) / m;
      return;
    }
  }
}

// Lexicographic order on (re, im) pairs, descending, with a small tolerance
// so that equal-up-to-rounding components do not flip the order.
bool lex_greater(const arma::cx_vec& a, const arma::cx_vec& b) {
  constexpr double tol = 1e-9;
  for (arma::uword i = 0; i < a.n_elem; ++i) {
    if (std::abs(a(i).real() - b(i).real()) > tol) return a(i).real() > b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > tol) return a(i).imag() > b(i).imag();
  }
  return false;
}

// Canonical orthonormal basis of a degenerate eigenspace: Gram-Schmidt over
// the projections of the standard basis vectors onto the subspace. For the
// identity matrix this reproduces the standard basis.
arma::cx_mat canonical_subspace_basis(const arma::cx_mat& span) {
  const arma::uword n = span.n_rows;
  const arma::uword dim = span.n_cols;
  const arma::cx_mat projector = span * span.t();
  arma::cx_mat basis(n, dim);
  arma::uword got = 0;
  for (arma::uword k = 0; k < n && got < dim; ++k) {
    arma::cx_vec v = projector.col(k);
    for (arma::uword j = 0; j < got; ++j) v -= arma::cdot(basis.col(j), v) * basis.col(j);
    const double nrm = arma::norm(v);
    if (nrm > 1e-7) {
      basis.col(got++) = v / nrm;
    }
  }
  if (got < dim)
    throw std::runtime_error("eigendecompose: degenerate subspace basis construction failed");
  return basis;
}

}  // namespace

Eigensystem eigendecompose(const arma::cx_mat& hermitian) {
  if (hermitian.n_rows != hermitian.n_cols)
    throw std::invalid_argument("eigendecompose: matrix must be square");
  const double asym = arma::abs(hermitian - hermitian.t()).max();
  if (asym > 1e-10)
    throw std::invalid_argument("eigendecompose: matrix is not Hermitian");

  arma::vec values;
  arma::cx_mat vectors;
  if (!arma::eig_sym(values, vectors, hermitian))
    throw std::runtime_error("eigendecompose: eig_sym failed");

  // eig_sym returns ascending order
  values = arma::reverse(values);
  vectors = arma::fliplr(vectors);

  const arma::uword n = values.n_elem;
  const double scale = std::max(std::abs(values(0)), 1.0);
  arma::uword i = 0;
  while (i < n) {
    arma::uword j = i + 1;
    while (j < n && std::abs(values(j) - values(i)) <= 1e-12 * scale) ++j;
    if (j - i > 1) {
      vectors.cols(i, j - 1) = canonical_subspace_basis(vectors.cols(i, j - 1));
    }
    for (arma::uword k = i; k < j; ++k) {
      arma::cx_vec v = vectors.col(k);
      fix_phase(v);
      vectors.col(k) = v;
    }
    // order within the tie group
    for (arma::uword a = i; a < j; ++a)
      for (arma::uword b = a + 1; b < j; ++b)
        if (lex_greater(vectors.col(b), vectors.col(a))) vectors.swap_cols(a, b);
    i = j;
  }
  return {std::move(vectors), std::move(values)};
}

RelayCorrelation::RelayCorrelation(arma::cx_mat sigma, std::optional<double> rho)
    : sigma_(std::move(sigma)), eig_(eigendecompose(sigma_)), rho_(rho) {
  const double lam_min = eig_.values.min();
  if (lam_min < -1e-10 * std::max(eig_.values.max(), 1.0))
    throw std::invalid_argument("RelayCorrelation: matrix is not positive semidefinite");
}

arma::cx_mat RelayCorrelation::sqrt() const {
  const arma::vec clamped = arma::clamp(eig_.values, 0.0, arma::datum::inf);
  return eig_.vectors * arma::diagmat(arma::sqrt(clamped)) * eig_.vectors.t();
}

RelayCorrelation build_constant_correlation(double rho, int n_relay) {
  if (!(rho >= 0.0 && rho < 1.0))
    throw std::domain_error("build_constant_correlation: requires 0 <= rho < 1");
  if (n_relay < 1)
    throw std::domain_error("build_constant_correlation: requires n_relay >= 1");
  arma::cx_mat sigma(n_relay, n_relay);
  sigma.fill(arma::cx_double(rho, 0.0));
  sigma.diag().fill(arma::cx_double(1.0, 0.0));
  return RelayCorrelation(std::move(sigma), rho);
}

}  // namespace mer
