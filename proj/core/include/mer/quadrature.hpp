// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>

namespace mer {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

/// Thrown when the evaluation budget is exhausted before the requested
/// tolerance is met; carries the best estimate obtained so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_estimate(best) {}
  QuadratureResult best_estimate;
};

/// integral_0^inf f(t) dt for finite integrable f. The half line is mapped
/// onto (0,1) with u = t/(1+t) and integrated by adaptive Gauss-Kronrod 7-15
/// panels, always refining the panel with the largest error estimate.
/// Succeeds when the summed error estimate is within
/// max(abs_tol, rel_tol * |value|).
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double abs_tol, double rel_tol,
                                         long max_evaluations = 500000);

}  // namespace mer
