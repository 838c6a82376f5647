// SPDX-License-Identifier: Apache-2.0
#include "mer/criteria.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mer/quadrature.hpp"
#include "mer/specfun.hpp"

namespace mer {
namespace {

// tolerances for the criteria quadratures
constexpr double kQuadAbsTol = 1e-10;
constexpr double kQuadRelTol = 1e-8;

double second_eigenvalue_sq(const RelayCorrelation& corr) {
  return corr.size() > 1 ? corr.eigenvalue(1) * corr.eigenvalue(1) : 0.0;
}

}  // namespace

EigenPowerAllocation mer_allocation(const SystemConfig& config,
                                    const RelayCorrelation& corr) {
  const double lam1 = corr.eigenvalue(0);
  if (!(lam1 > 0.0))
    throw std::domain_error("mer_allocation: dominant eigenvalue must be positive");
  EigenPowerAllocation alloc{arma::vec(corr.size(), arma::fill::zeros)};
  alloc.gains(0) = config.relay_power() /
                   (config.noise_power() + lam1 * config.source_power());
  return alloc;
}

double expectation_inv_z(double total_gain, double l1sq, double gamma, int n_s) {
  if (!(total_gain > 0.0) || !(l1sq > 0.0) || !(gamma >= 0.0))
    throw std::domain_error("expectation_inv_z: requires P > 0, l1sq > 0, gamma >= 0");
  const double scale = total_gain * l1sq;
  if (gamma == 0.0) {
    const double a = 1.0 / scale;
    return a * gamma_zero_scaled(a);
  }
  const auto integrand = [&](double t) {
    const double a = 1.0 / (scale * (1.0 + gamma * t));
    return a * gamma_zero_scaled(a) * erlang_pdf(n_s, t);
  };
  return integrate_semi_infinite(integrand, kQuadAbsTol, kQuadRelTol).value;
}

double expectation_gy_over_z(double total_gain, double l1sq, double gamma,
                             int n_s) {
  if (!(total_gain > 0.0) || !(l1sq > 0.0) || !(gamma >= 0.0))
    throw std::domain_error("expectation_gy_over_z: requires P > 0, l1sq > 0, gamma >= 0");
  const double scale = total_gain * l1sq;
  if (gamma == 0.0) return expectation_inv_z(total_gain, l1sq, gamma, n_s);
  const auto integrand = [&](double t) {
    const double a = 1.0 / (scale * (1.0 + gamma * t));
    return gamma_zero_scaled(a) * erlang_pdf(n_s, t);
  };
  return integrate_semi_infinite(integrand, kQuadAbsTol, kQuadRelTol).value /
         scale;
}

double derivative_at_zero(const SystemConfig& config,
                          const RelayCorrelation& corr, double total_gain) {
  const double l1sq = corr.eigenvalue(0) * corr.eigenvalue(0);
  const double l2sq = second_eigenvalue_sq(corr);
  const double gamma = config.snr();
  const int n_s = config.source_antennas();
  const double b = 1.0 / (total_gain * l1sq);
  const double e_inv = expectation_inv_z(total_gain, l1sq, gamma, n_s);
  const double e_gy = expectation_gy_over_z(total_gain, l1sq, gamma, n_s);
  return l2sq * e_gy + e_inv / total_gain -
         gamma_zero_scaled(b) * (1.0 + total_gain * l2sq) /
             (total_gain * total_gain * l1sq);
}

double derivative_at_zero_large_ns(const SystemConfig& config,
                                   const RelayCorrelation& corr,
                                   double total_gain) {
  const double l1sq = corr.eigenvalue(0) * corr.eigenvalue(0);
  const double l2sq = second_eigenvalue_sq(corr);
  const double gamma = config.snr();
  const double scale = total_gain * l1sq;
  const double b = 1.0 / scale;
  const double a1 = 1.0 / (scale * (1.0 + gamma));
  const double phi_a1 = gamma_zero_scaled(a1);
  // E{1/Z} -> a1 phi(a1), E{(1+gamma Y)/Z} -> phi(a1)/(P l1sq) under Y = 1
  return l2sq * phi_a1 / scale + a1 * phi_a1 / total_gain -
         gamma_zero_scaled(b) * (1.0 + total_gain * l2sq) /
             (total_gain * total_gain * l1sq);
}

double second_derivative_integrand(double x1, double x2, double y, double p,
                                   double total_gain,
                                   const SystemConfig& config,
                                   const RelayCorrelation& corr) {
  if (x1 < 0.0 || x2 < 0.0 || y < 0.0 || p < 0.0 || p > total_gain)
    throw std::domain_error("second_derivative_integrand: inputs out of range");
  const double l1sq = corr.eigenvalue(0) * corr.eigenvalue(0);
  const double l2sq = second_eigenvalue_sq(corr);
  const double gamma = config.snr();
  const double s = (total_gain - p) * l1sq * x1 + p * l2sq * x2;
  const double denom_plain = 1.0 + s;                      // D(p)
  const double denom_boost = 1.0 + s * (1.0 + gamma * y);  // N(p)
  const double diff = l1sq * x1 - l2sq * x2;
  return -config.source_power() * diff * diff *
         (denom_boost + (1.0 + gamma * y) * denom_plain) * y /
         (config.source_antennas() * config.noise_power() * denom_plain *
          denom_plain * denom_boost * denom_boost);
}

JensenCondition jensen_condition(const SystemConfig& config,
                                 const RelayCorrelation& corr) {
  const double total_gain = mer_allocation(config, corr).gains(0);
  const double l1sq = corr.eigenvalue(0) * corr.eigenvalue(0);
  const double l2sq = second_eigenvalue_sq(corr);
  const double gamma = config.snr();
  const int n_s = config.source_antennas();
  const double b = 1.0 / (total_gain * l1sq);

  JensenCondition r;
  r.rhs = gamma_zero_scaled(b) * (1.0 + total_gain * l2sq);
  if (l2sq == 0.0) {
    // no signal on the second eigenmode; MER trivially optimal
    r.d = std::numeric_limits<double>::infinity();
    r.lhs = 0.0;
    r.certifies = true;
    return r;
  }
  double weighted_tail;  // e^D E_{n_S+1}(D)
  if (gamma == 0.0) {
    r.d = std::numeric_limits<double>::infinity();
    weighted_tail = 0.0;
  } else {
    r.d = n_s * (1.0 + total_gain * l2sq) / (gamma * total_gain * l2sq);
    weighted_tail = exp_integral_en_scaled(n_s + 1, r.d);
  }
  r.lhs = total_gain * l1sq * l2sq * (1.0 + total_gain * l2sq) /
          (l2sq * (1.0 + total_gain * l1sq) +
           n_s * (l1sq - l2sq) * weighted_tail);
  r.certifies = r.lhs < r.rhs;
  return r;
}

LargeNsCondition large_ns_condition(const SystemConfig& config,
                                    const RelayCorrelation& corr) {
  const double total_gain = mer_allocation(config, corr).gains(0);
  const double l1sq = corr.eigenvalue(0) * corr.eigenvalue(0);
  const double l2sq = second_eigenvalue_sq(corr);
  const double gamma = config.snr();
  const double scale = total_gain * l1sq;
  const double b = 1.0 / scale;

  LargeNsCondition r;
  r.a1 = 1.0 / (scale * (1.0 + gamma));
  if (gamma == 0.0) {
    // numerator vanishes identically; only a dead second eigenmode passes
    r.threshold = 0.0;
    r.optimal = l2sq <= 0.0;
    return r;
  }
  const double phi_b = gamma_zero_scaled(b);
  const double phi_a1 = gamma_zero_scaled(r.a1);
  const double num = phi_b - scale * r.a1 * phi_a1;
  const double den = total_gain * (phi_a1 - phi_b);
  if (den <= 0.0) {
    r.degenerate = true;
    r.threshold = std::numeric_limits<double>::quiet_NaN();
    r.optimal = derivative_at_zero_large_ns(config, corr, total_gain) <= 0.0;
    return r;
  }
  r.threshold = num / den;
  r.optimal = l2sq <= r.threshold;
  return r;
}

MerReport mer_exact_condition(const SystemConfig& config,
                              const RelayCorrelation& corr) {
  MerReport rep;
  rep.total_gain = mer_allocation(config, corr).gains(0);
  const double l1sq = corr.eigenvalue(0) * corr.eigenvalue(0);
  rep.lhs_lambda2sq = second_eigenvalue_sq(corr);
  const double gamma = config.snr();
  const int n_s = config.source_antennas();
  const double p = rep.total_gain;
  const double b = 1.0 / (p * l1sq);

  rep.e_inv_z = expectation_inv_z(p, l1sq, gamma, n_s);
  rep.e_gy_over_z = expectation_gy_over_z(p, l1sq, gamma, n_s);
  const double phi_b = gamma_zero_scaled(b);
  rep.margin_exact = rep.lhs_lambda2sq * rep.e_gy_over_z + rep.e_inv_z / p -
                     phi_b * (1.0 + p * rep.lhs_lambda2sq) / (p * p * l1sq);

  const double num = phi_b - p * l1sq * rep.e_inv_z;
  const double den = p * p * l1sq * rep.e_gy_over_z - p * phi_b;
  if (den <= 0.0) {
    rep.exact_degenerate = true;
    rep.threshold_exact = std::numeric_limits<double>::quiet_NaN();
    rep.exact_optimal = rep.margin_exact <= 0.0;
  } else {
    rep.threshold_exact = num / den;
    rep.exact_optimal = rep.lhs_lambda2sq <= rep.threshold_exact;
  }

  const JensenCondition jc = jensen_condition(config, corr);
  rep.jensen_certifies = jc.certifies;
  rep.jensen_lhs = jc.lhs;
  rep.jensen_rhs = jc.rhs;
  rep.d = jc.d;

  const LargeNsCondition lc = large_ns_condition(config, corr);
  rep.large_ns_optimal = lc.optimal;
  rep.large_ns_degenerate = lc.degenerate;
  rep.large_ns_threshold = lc.threshold;
  rep.a1 = lc.a1;
  return rep;
}

BoundaryResult mer_boundary_pr_db(const SystemConfig& config,
                                  const RelayCorrelation& corr,
                                  MerCriterion criterion, double lo_db,
                                  double hi_db, double tol_db) {
  const auto margin = [&](double pr_db) {
    const SystemConfig cfg = config.with_relay_power(db_to_linear(pr_db));
    switch (criterion) {
      case MerCriterion::exact:
        return derivative_at_zero(cfg, corr, mer_allocation(cfg, corr).gains(0));
      case MerCriterion::large_ns:
        return derivative_at_zero_large_ns(cfg, corr,
                                           mer_allocation(cfg, corr).gains(0));
      case MerCriterion::jensen: {
        const JensenCondition jc = jensen_condition(cfg, corr);
        return jc.lhs - jc.rhs;
      }
    }
    return 0.0;
  };

  if (margin(lo_db) > 0.0) return {BoundaryResult::Status::optimal_nowhere, lo_db};
  if (margin(hi_db) <= 0.0)
    return {BoundaryResult::Status::optimal_everywhere, hi_db};
  double lo = lo_db, hi = hi_db;
  while (hi - lo > tol_db) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) <= 0.0 ? lo : hi) = mid;
  }
  return {BoundaryResult::Status::crossed, 0.5 * (lo + hi)};
}

}  // namespace mer
