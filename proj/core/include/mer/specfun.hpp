// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace mer {

/// Gamma(0, z) = E_1(z) = integral_z^inf e^{-t}/t dt, z > 0.
/// Power series below z = 1, modified Lentz continued fraction above.
/// Underflows to 0 for z beyond ~745.
double gamma_zero(double z);

/// e^z * Gamma(0, z). Stable for arbitrarily large z, where the unscaled
/// value underflows; tends to 1/z as z -> inf.
double gamma_zero_scaled(double z);

/// Generalized exponential integral E_n(z) = integral_1^inf e^{-zt}/t^n dt.
/// n = 0 is e^{-z}/z. Satisfies n E_{n+1}(z) = e^{-z} - z E_n(z).
double exp_integral_en(int n, double z);

/// e^z * E_n(z); tends to 1/(z+n) as z -> inf.
double exp_integral_en_scaled(int n, double z);

/// Density of Y ~ Gamma(shape n, rate n): mean 1, variance 1/n. This is the
/// law of the average of n unit-mean exponentials.
double erlang_pdf(int n, double t);

/// CDF of the same law: 1 - e^{-nt} sum_{k<n} (nt)^k / k!.
double erlang_cdf(int n, double t);

}  // namespace mer
