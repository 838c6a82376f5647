// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace mer {

/// Node counts and power budgets of the two-hop relay link. Immutable after
/// construction; powers are linear (not dB) and noise defaults to unit
/// variance so that powers double as SNRs.
class SystemConfig {
 public:
  SystemConfig(int source_antennas, int relay_antennas, double source_power,
               double relay_power, double noise_power = 1.0);

  int source_antennas() const { return n_source_; }
  int relay_antennas() const { return n_relay_; }
  double source_power() const { return source_power_; }
  double relay_power() const { return relay_power_; }
  double noise_power() const { return noise_power_; }

  /// gamma = P_S / N_0.
  double snr() const { return source_power_ / noise_power_; }

  /// Same link with a different relay power budget.
  SystemConfig with_relay_power(double relay_power) const {
    return {n_source_, n_relay_, source_power_, relay_power, noise_power_};
  }

 private:
  int n_source_;
  int n_relay_;
  double source_power_;
  double relay_power_;
  double noise_power_;
};

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace mer
