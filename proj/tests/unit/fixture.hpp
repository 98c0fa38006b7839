#pragma once

#include <cmath>

#include "cqnls/frequency_curves.hpp"
#include "cqnls/io.hpp"

namespace test {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// 60-node scan with derivatives written by `cqnls critical` in the test data directory.
inline const cqnls::FrequencyCurve& curve() {
  static const auto c = cqnls::curve_from_json(cqnls::read_json(CQNLS_TEST_DATA "/curve.json"));
  return c;
}

inline const cqnls::CriticalFrequencies& critical() {
  static const auto c = cqnls::critical_from_json(cqnls::read_json(CQNLS_TEST_DATA "/critical.json"));
  return c;
}

}  // namespace test
