// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mer/channel.hpp"
#include "mer/correlation.hpp"
#include "mer/system.hpp"

namespace mer {

/// Maximum eigenmode allocation: the whole relay budget on the dominant
/// eigenmode, lambda^G_1 = P_R / (N_0 + lambda^Sigma_1 P_S), zero elsewhere.
/// Saturates the relay power constraint exactly.
EigenPowerAllocation mer_allocation(const SystemConfig& config,
                                    const RelayCorrelation& corr);

/// E{1/Z} with Z = 1 + P l1sq (1 + gamma Y) X_1, X_1 ~ Exp(1),
/// Y ~ Gamma(n_s, n_s), by quadrature over the density of Y.
double expectation_inv_z(double total_gain, double l1sq, double gamma, int n_s);

/// E{(1 + gamma Y)/Z} for the same Z.
double expectation_gy_over_z(double total_gain, double l1sq, double gamma,
                             int n_s);

/// d/dp of the ergodic capacity (no half-duplex factor) when gain p is moved
/// from the dominant to the second eigenmode at fixed total gain P,
/// evaluated at p = 0. Negative means MER is optimal under that perturbation.
double derivative_at_zero(const SystemConfig& config,
                          const RelayCorrelation& corr, double total_gain);

/// Same derivative with the source fading Y pinned to its mean (the
/// large-source-array limit); closed form, no quadrature.
double derivative_at_zero_large_ns(const SystemConfig& config,
                                   const RelayCorrelation& corr,
                                   double total_gain);

/// Integrand of the second derivative d^2 C / dp^2; nonpositive everywhere,
/// which makes the first-order condition sufficient.
double second_derivative_integrand(double x1, double x2, double y, double p,
                                   double total_gain,
                                   const SystemConfig& config,
                                   const RelayCorrelation& corr);

struct JensenCondition {
  bool certifies = false;  // lhs < rhs
  double lhs = 0.0;
  double rhs = 0.0;
  double d = 0.0;  // argument of E_{n_S+1}; +inf when gamma or lambda_2 is 0
};

/// Closed-form bound obtained by Jensen's inequality on the reciprocal of
/// the derivative's expectation term. Mind the direction: the inequality
/// lower-bounds that expectation, so a violated bound proves MER suboptimal
/// while a satisfied one is necessary, not sufficient, for optimality.
JensenCondition jensen_condition(const SystemConfig& config,
                                 const RelayCorrelation& corr);

struct LargeNsCondition {
  bool optimal = false;
  bool degenerate = false;  // threshold denominator <= 0; decided by derivative
  double threshold = 0.0;
  double a1 = 0.0;  // 1 / (P l1sq (1 + gamma))
};

/// Closed-form criterion in the large-source-array limit Y -> 1.
LargeNsCondition large_ns_condition(const SystemConfig& config,
                                    const RelayCorrelation& corr);

/// Full evaluation of the optimality criteria at one operating point.
struct MerReport {
  double total_gain = 0.0;      // P from the MER allocation
  double margin_exact = 0.0;    // derivative at p = 0; <= 0 means optimal
  double threshold_exact = 0.0; // admissible (lambda^Sigma_2)^2 bound
  double lhs_lambda2sq = 0.0;   // (lambda^Sigma_2)^2
  bool exact_optimal = false;
  bool exact_degenerate = false;  // threshold denominator <= 0
  bool jensen_certifies = false;
  double jensen_lhs = 0.0;
  double jensen_rhs = 0.0;
  double large_ns_threshold = 0.0;
  bool large_ns_optimal = false;
  bool large_ns_degenerate = false;
  double a1 = 0.0;
  double d = 0.0;
  double e_inv_z = 0.0;
  double e_gy_over_z = 0.0;
};

/// Exact quadrature criterion plus the Jensen and large-n_S companions.
/// When the threshold rearrangement degenerates (denominator <= 0) the
/// decision falls back to the derivative sign.
MerReport mer_exact_condition(const SystemConfig& config,
                              const RelayCorrelation& corr);

enum class MerCriterion { exact, large_ns, jensen };

struct BoundaryResult {
  enum class Status { crossed, optimal_everywhere, optimal_nowhere } status;
  double pr_db = 0.0;  // crossing point when status == crossed
};

/// Relay power at which the chosen criterion stops holding, located by
/// bisection over P_R in dB at fixed P_S (margins are monotone in P_R for
/// the exact and large-n_S criteria).
BoundaryResult mer_boundary_pr_db(const SystemConfig& config,
                                  const RelayCorrelation& corr,
                                  MerCriterion criterion, double lo_db = -40.0,
                                  double hi_db = 60.0, double tol_db = 0.01);

}  // namespace mer
