// SPDX-License-Identifier: Apache-2.0
#include "mer/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mer {

SystemConfig::SystemConfig(int source_antennas, int relay_antennas,
                           double source_power, double relay_power,
                           double noise_power)
    : n_source_(source_antennas),
      n_relay_(relay_antennas),
      source_power_(source_power),
      relay_power_(relay_power),
      noise_power_(noise_power) {
  if (source_antennas < 1)
    throw std::invalid_argument("SystemConfig: source_antennas must be >= 1");
  if (relay_antennas < 1)
    throw std::invalid_argument("SystemConfig: relay_antennas must be >= 1");
  if (!(source_power >= 0.0))
    throw std::invalid_argument("SystemConfig: source_power must be >= 0");
  if (!(relay_power >= 0.0))
    throw std::invalid_argument("SystemConfig: relay_power must be >= 0");
  if (!(noise_power > 0.0))
    throw std::invalid_argument("SystemConfig: noise_power must be > 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace mer
