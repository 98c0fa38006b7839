#pragma once

#include <vector>

#include "cqnls/profile.hpp"

namespace cqnls {

/// Ground state of the second-order finite-difference radial problem in
/// w = r u on r_i = i dr, i = 0..n, with w_0 = w_n = 0:
///   (w_{i-1} - 2 w_i + w_{i+1})/dr^2 + (rho_i - rho_i^2) w_i - omega w_i = 0,  rho_i = (w_i/r_i)^2.
/// Stationary for the Crank-Nicolson scheme up to a phase rotation.
struct DiscreteSoliton {
  double omega = 0.0;
  double dr = 0.0;
  std::vector<double> w;  // n + 1 samples, w[0] = w[n] = 0
  double residual = 0.0;  // max |F_i| / max |w_i|
  int newton_iterations = 0;

  std::size_t intervals() const { return w.empty() ? 0 : w.size() - 1; }
  double radius() const { return dr * static_cast<double>(intervals()); }
};

/// Newton iteration started from the sampled continuous ground state.
/// radius defaults to twice the profile's truncation radius.
DiscreteSoliton discrete_ground_state(const RadialProfile& ground, double dr = 0.05, double radius = 0.0);

/// rho - rho^2: the radial nonlinearity N(|u|^2) for u = w/r.
inline double focusing(double rho) { return rho - rho * rho; }

}  // namespace cqnls
