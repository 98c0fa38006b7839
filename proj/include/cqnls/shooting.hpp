#pragma once

#include <string_view>
#include <utility>

#include "cqnls/profile.hpp"
#include "cqnls/radial_ode.hpp"

namespace cqnls {

enum class TrajectoryClass { CrossesZero, TurnsUpward, Undetermined };

std::string_view to_string(TrajectoryClass c);

/// max(40/sqrt(omega), 60).
double default_max_radius(double omega);
/// min(0.01/sqrt(omega), 0.02).
double default_grid_spacing(double omega);

/// (1e-6, just below the plateau level) for the cubic-quintic problem and
/// (1e-6, 20) for the cubic reference. Amplitudes above the plateau level turn
/// upward immediately, so the larger root of the potential is not a usable
/// upper end.
std::pair<double, double> default_amplitude_bracket(const Nonlinearity& nl);

/// Radius at which a flat-top profile of level plateau_level() balances its
/// front: 2 sigma / F(plateau), sigma the one-dimensional front action.
double plateau_radius_estimate(const Nonlinearity& nl);

/// Integrates the radial equation from the series start and reports the first
/// event: u < 0, u' > 0 while u > 0, or neither before max_radius (or before u
/// falls below decay_floor * amplitude).
TrajectoryClass classify_trajectory(double amplitude, Frequency omega, const ShootingConfig& cfg = {});
TrajectoryClass classify_trajectory(double amplitude, const Nonlinearity& nl, const ShootingConfig& cfg);

/// Positive radial ground state of -u'' - (2/r)u' + omega u - u^3 + u^5 = 0.
/// Bisection on the central amplitude supplies the initial guess (or, when the
/// plateau is too long for double precision, bisection on the deviation from
/// the plateau level at an interior radius), and a damped
/// Newton iteration on a multiple-shooting system finishes the solve with a
/// Robin condition that is exact for the linear tail.
RadialProfile solve_ground_state(Frequency omega, const ShootingConfig& cfg = {});

/// Positive radial solution of -g'' - (2/r)g' + g - g^3 = 0.
RadialProfile solve_cubic_reference(const ShootingConfig& cfg = {});

/// Mass of the cubic reference state with the default configuration, computed once.
double cubic_reference_mass();

}  // namespace cqnls
