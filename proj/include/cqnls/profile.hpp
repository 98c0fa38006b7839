#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cqnls {

/// Upper end of the frequency window in which ground states exist.
inline constexpr double kOmegaMax = 3.0 / 16.0;

/// Temporal frequency of a standing wave. Construction does not validate;
/// solvers reject values outside (0, 3/16).
class Frequency {
 public:
  constexpr explicit Frequency(double omega) : omega_(omega) {}

  constexpr double value() const { return omega_; }
  constexpr bool in_window() const { return omega_ > 0.0 && omega_ < kOmegaMax; }

  friend constexpr bool operator==(Frequency, Frequency) = default;

 private:
  double omega_;
};

enum class ProfileKind { ground_state, rescaled_soliton, cubic_reference, test_function };

std::string_view to_string(ProfileKind kind);

/// How the shooting solver arrived at a profile.
struct SolverInfo {
  std::string initial_guess;  // "bisection" or "plateau_start"
  int bisection_steps = 0;
  int newton_iterations = 0;
  int domain_doublings = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double tail_mismatch = 0.0;  // max relative deviation of u r e^{k r} from the fitted constant
  std::pair<double, double> matching_window{0.0, 0.0};
};

/// Radial function sampled on a uniform grid r_i = i*h, i = 0..N, together
/// with its derivative. Beyond the last node the profile continues
/// analytically as tail_constant * exp(-decay_rate r) / r when decay_rate > 0.
struct RadialProfile {
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;
  std::optional<Frequency> omega;
  double amplitude = 0.0;
  double tail_constant = 0.0;
  double decay_rate = 0.0;
  double truncation_radius = 0.0;
  ProfileKind kind = ProfileKind::test_function;
  /// Coefficient of u^5 in the equation the profile solves (0 for the cubic reference).
  double quintic = 1.0;
  std::optional<SolverInfo> info;

  std::size_t size() const { return r.size(); }
  double spacing() const { return r.size() > 1 ? r[1] - r[0] : 0.0; }

  /// Value and derivative at an arbitrary radius: cubic Hermite inside the
  /// grid, analytic tail beyond it.
  std::pair<double, double> at(double radius) const;
};

/// Knobs of the shooting solver. Optional fields default to frequency-aware
/// values chosen by the solver.
struct ShootingConfig {
  std::optional<std::pair<double, double>> amplitude_bracket;
  double ode_tolerance = 1e-12;
  double bisection_tolerance = 1e-12;
  std::optional<double> max_radius;
  std::optional<std::pair<double, double>> matching_window;
  double taylor_start_step = 1e-2;
  std::optional<double> grid_spacing;
  int max_domain_doublings = 2;
  double residual_gate = 1e-7;
  double tail_threshold = 1e-10;
  /// Trajectories that decay below this fraction of the amplitude without
  /// firing an event are reported as Undetermined.
  double decay_floor = 1e-7;
  /// Length of the multiple-shooting segments.
  double segment_length = 8.0;

  void validate() const;
};

/// Builds a test-function profile from closed-form samplers on [0, radius].
template <class Value, class Deriv>
RadialProfile sample_profile(Value&& value, Deriv&& deriv, double radius, std::size_t intervals) {
  RadialProfile p;
  p.kind = ProfileKind::test_function;
  const double h = radius / static_cast<double>(intervals);
  p.r.resize(intervals + 1);
  p.u.resize(intervals + 1);
  p.du.resize(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double x = h * static_cast<double>(i);
    p.r[i] = x;
    p.u[i] = value(x);
    p.du[i] = deriv(x);
  }
  p.amplitude = p.u.front();
  p.truncation_radius = radius;
  return p;
}

}  // namespace cqnls
