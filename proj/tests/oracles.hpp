// SPDX-License-Identifier: Apache-2.0
//
// Independent numerical oracles used by the tests. Everything here goes
// through integrate_semi_infinite on a different integral representation
// than the library implementation, so the two routes only share the
// quadrature engine, not the special-function code paths.
#pragma once

#include <armadillo>
#include <cmath>

#include "mer/quadrature.hpp"
#include "mer/rng.hpp"

namespace oracles {

/// Gamma(0, z) = integral_0^inf e^{-(z+s)} / (z+s) ds.
inline double gamma_zero(double z) {
  return mer::integrate_semi_infinite(
             [z](double s) { return std::exp(-(z + s)) / (z + s); }, 0.0,
             5e-13, 4000000)
      .value;
}

/// E_n(z), n >= 2. For z >= 1 directly from
/// e^{-z} integral_0^inf e^{-zs} (1+s)^{-n} ds; for z < 1 by the (there
/// contracting) upward recurrence from the quadrature value of E_1, which
/// keeps the route disjoint from the library's series implementation.
inline double exp_integral_en(int n, double z) {
  if (z < 1.0) {
    double e = gamma_zero(z);
    for (int k = 1; k < n; ++k) e = (std::exp(-z) - z * e) / k;
    return e;
  }
  const double tail = mer::integrate_semi_infinite(
                          [n, z](double s) {
                            return std::exp(-z * s) * std::pow(1.0 + s, -n);
                          },
                          0.0, 5e-13, 4000000)
                          .value;
  return std::exp(-z) * tail;
}

/// Random Hermitian PSD matrix A A^H (complex Gaussian factor), entries O(1).
inline arma::cx_mat random_psd(int n, std::uint64_t seed, std::uint64_t stream) {
  mer::rng::Stream rng(seed, stream);
  arma::cx_mat a(n, n);
  for (arma::uword i = 0; i < a.n_elem; ++i) a(i) = rng.complex_gaussian();
  return a * a.t() / static_cast<double>(n);
}

/// Descending positive vector with entries in (lo, hi).
inline arma::vec random_descending(int n, double lo, double hi,
                                   std::uint64_t seed, std::uint64_t stream) {
  mer::rng::Stream rng(seed, stream);
  arma::vec v(n);
  for (int i = 0; i < n; ++i) v(i) = lo + (hi - lo) * rng.uniform();
  return arma::sort(v, "descend");
}

}  // namespace oracles
