// SPDX-License-Identifier: Apache-2.0
#include "mer/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mer {
namespace {

constexpr double kEulerMascheroni = 0.57721566490153286060651209008240243;
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 400;

// E_1 series for z <= 1: -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!).
double e1_series(double z) {
  double sum = -kEulerMascheroni - std::log(z);
  double term = 1.0;  // z^k / k!
  for (int k = 1; k <= kMaxIter; ++k) {
    term *= z / k;
    const double del = ((k & 1) ? term : -term) / k;
    sum += del;
    if (std::abs(del) < kEps * std::abs(sum)) break;
  }
  return sum;
}

// Scaled continued fraction for E_n(z), z > 1 (modified Lentz):
// e^z E_n(z) = 1/(z+n - 1*n/(z+n+2 - 2(n+1)/(z+n+4 - ...))).
double en_cf_scaled(int n, double z) {
  const double fpmin = std::numeric_limits<double>::min() / kEps;
  double b = z + n;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double a = -static_cast<double>(i) * (n - 1 + i);
    b += 2.0;
    d = a * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + a / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("exp_integral_en: continued fraction failed to converge");
}

// E_n series for z <= 1, n >= 2 (alternating series with a log term at
// m = n-1; psi(n) = -gamma + sum_{k<n} 1/k).
double en_series(int n, double z) {
  const int nm1 = n - 1;
  double ans = 1.0 / nm1;
  double fact = 1.0;
  for (int i = 1; i <= kMaxIter; ++i) {
    fact *= -z / i;
    double del;
    if (i != nm1) {
      del = -fact / (i - nm1);
    } else {
      double psi = -kEulerMascheroni;
      for (int k = 1; k <= nm1; ++k) psi += 1.0 / k;
      del = fact * (-std::log(z) + psi);
    }
    ans += del;
    if (std::abs(del) < kEps * std::abs(ans)) return ans;
  }
  throw std::runtime_error("exp_integral_en: series failed to converge");
}

}  // namespace

double gamma_zero(double z) {
  if (!(z > 0.0)) throw std::domain_error("gamma_zero: requires z > 0");
  if (z <= 1.0) return e1_series(z);
  return std::exp(-z) * en_cf_scaled(1, z);
}

double gamma_zero_scaled(double z) {
  if (!(z > 0.0)) throw std::domain_error("gamma_zero_scaled: requires z > 0");
  if (z <= 1.0) return std::exp(z) * e1_series(z);
  return en_cf_scaled(1, z);
}

double exp_integral_en(int n, double z) {
  if (!(z > 0.0)) throw std::domain_error("exp_integral_en: requires z > 0");
  if (n < 0) throw std::domain_error("exp_integral_en: requires n >= 0");
  if (n == 0) return std::exp(-z) / z;
  if (n == 1) return gamma_zero(z);
  if (z <= 1.0) return en_series(n, z);
  return std::exp(-z) * en_cf_scaled(n, z);
}

double exp_integral_en_scaled(int n, double z) {
  if (!(z > 0.0)) throw std::domain_error("exp_integral_en_scaled: requires z > 0");
  if (n < 0) throw std::domain_error("exp_integral_en_scaled: requires n >= 0");
  if (n == 0) return 1.0 / z;
  if (z <= 1.0) return std::exp(z) * (n == 1 ? e1_series(z) : en_series(n, z));
  return en_cf_scaled(n, z);
}

double erlang_pdf(int n, double t) {
  if (n < 1) throw std::domain_error("erlang_pdf: requires n >= 1");
  if (t < 0.0) return 0.0;
  if (t == 0.0) return n == 1 ? 1.0 : 0.0;
  return std::exp(n * std::log(static_cast<double>(n)) + (n - 1) * std::log(t) -
                  n * t - std::lgamma(static_cast<double>(n)));
}

double erlang_cdf(int n, double t) {
  if (n < 1) throw std::domain_error("erlang_cdf: requires n >= 1");
  if (t <= 0.0) return 0.0;
  const double x = n * t;  // rate n
  if (x > 708.0) return 1.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < n; ++k) {
    term *= x / k;
    sum += term;
  }
  return 1.0 - std::exp(-x) * sum;
}

}  // namespace mer
