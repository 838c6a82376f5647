// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>

#include "mer/system.hpp"

using namespace mer;

TEST_CASE("config validation") {
  CHECK_THROWS_AS(SystemConfig(0, 2, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SystemConfig(2, 0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SystemConfig(2, 2, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SystemConfig(2, 2, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(SystemConfig(2, 2, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("snr is exactly P_S / N_0") {
  const SystemConfig cfg(2, 2, 10.0, 5.0, 2.0);
  CHECK(cfg.snr() == 10.0 / 2.0);
  CHECK(cfg.with_relay_power(7.0).relay_power() == 7.0);
  CHECK(cfg.with_relay_power(7.0).snr() == cfg.snr());
}

TEST_CASE("dB round trip to 1e-12") {
  for (double db : {-30.0, -3.0, 0.0, 10.0, 17.5, 40.0}) {
    CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-12));
  }
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(db_to_linear(0.0) == 1.0);
}
