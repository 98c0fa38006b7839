#pragma once

#include <functional>

#include "cqnls/functionals.hpp"
#include "cqnls/profile.hpp"

namespace cqnls {

struct FrequencyRoot {
  double omega = 0.0;
  RadialProfile profile;
  FunctionalReport report;
  double value = 0.0;
  int solves = 0;
};

using ProfileScalar = std::function<double(const RadialProfile&, const FunctionalReport&)>;

/// Finds omega in [lo, hi] with g(P_omega) = target by TOMS 748 with a fresh
/// ground-state solve per iterate. Stops when |g - target| <= value_tol or the
/// bracket is narrower than omega_tol. Throws TargetNotBracketed if g - target
/// does not change sign on [lo, hi].
FrequencyRoot solve_for_frequency(const ProfileScalar& g, double target, double lo, double hi,
                                  const ShootingConfig& cfg, double value_tol, double omega_tol = 1e-14);

}  // namespace cqnls
