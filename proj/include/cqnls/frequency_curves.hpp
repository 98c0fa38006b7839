#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqnls/functionals.hpp"
#include "cqnls/profile.hpp"

namespace cqnls {

enum class Stability { stable, unstable, critical, unclassified };

std::string_view to_string(Stability s);

struct FrequencyCurvePoint {
  double omega = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double beta = 0.0;
  double d_value = 0.0;
  double grad_sq = 0.0;
  double l4 = 0.0;
  double l6 = 0.0;
  double nehari_residual = 0.0;
  double pohozaev_residual = 0.0;
  double amplitude = 0.0;
  /// Grid used by the solve; derivative stencils reuse it.
  double truncation_radius = 0.0;
  double grid_spacing = 0.0;
  /// Direct quadrature of the rescaled soliton built from this ground state.
  double rescaled_mass = 0.0;
  double rescaled_energy = 0.0;
  double rescaled_beta = 0.0;
  double rescaled_pohozaev = 0.0;

  // Filled by differentiate().
  std::optional<double> mass_derivative;
  std::optional<double> grad_derivative;
  std::optional<double> energy_derivative;
  std::optional<double> d_second;
  std::optional<double> grad_identity_error;    // |grad' - 3M/2| / (3M/2)
  std::optional<double> energy_identity_error;  // |E' + omega M'/2| / |E'|
  std::optional<double> d_second_error;         // |d'' - M'/2| / |M'/2|

  Stability stability = Stability::unclassified;
  /// Whether sign(M') agrees with the stability label (unset for critical points).
  std::optional<bool> slope_agrees;
};

struct NodeFailure {
  double omega;
  std::string message;
};

/// Solved frequency samples, sorted by omega. Nodes whose solve failed are
/// listed in `failures` instead of `points`.
struct FrequencyCurve {
  std::vector<FrequencyCurvePoint> points;
  std::vector<NodeFailure> failures;

  std::vector<double> omegas() const;
};

struct CriticalFrequencies {
  double omega_star = 0.0;        // beta = 1/3
  double omega_upper_star = 0.0;  // beta = 1
  double beta_at_star = 0.0;
  double beta_at_upper_star = 0.0;
  double m0 = 0.0;          // M(P_{omega_star})
  double m_q1 = 0.0;        // M(P_{omega_upper_star})
  double m_threshold = 0.0; // 4/(3 sqrt 3) m_q1
  double mass_argmin = 0.0;
  double argmin_spacing = 0.0;  // larger of the two grid gaps around mass_argmin
  int solves = 0;
};

struct ScanOptions {
  ShootingConfig shooting;
  unsigned workers = 1;
};

/// n nodes uniform in log(omega / (3/16 - omega)) on [lo, hi], which clusters
/// them near both ends of the window.
std::vector<double> default_scan_grid(std::size_t n = 60, double lo = 0.004, double hi = 0.185);

/// Ground state and functionals at a single frequency.
FrequencyCurvePoint solve_point(double omega, const ShootingConfig& cfg = {});

FrequencyCurve scan(std::vector<double> omega_grid, const ScanOptions& opt = {});

/// Fresh solves at omega +- h, +- 2h (h = 1e-4 max(omega, 0.01)) on the grid
/// of the central solve; fourth-order differences for M', grad', E', d''.
FrequencyCurve differentiate(const FrequencyCurve& curve, const ScanOptions& opt = {});

/// Roots of beta = 1/3 and beta = 1 by a bracketing solver with fresh solves.
CriticalFrequencies locate_critical(const FrequencyCurve& curve, const ShootingConfig& cfg = {});

/// Labels each point by omega versus omega_star (critical within tol).
FrequencyCurve classify_stability(const FrequencyCurve& curve, const CriticalFrequencies& crit,
                                  double tol = 1e-8);

struct SmallFrequencyCheck {
  double omega = 0.0;
  double mass_leading_error = 0.0;  // |sqrt(omega) M - M(g)| / M(g)
  double mass_error = 0.0;          // against omega^-1/2 M(g) + sqrt(omega)/2 int g^6
  double energy_error = 0.0;        // against sqrt(omega)/2 M(g) - omega^(3/2)/12 int g^6
  double beta_error = 0.0;          // against omega beta(g)
};

struct AsymptoticReport {
  std::vector<SmallFrequencyCheck> small;
  double beta_slope = 0.0;  // d log beta / d log(3/16 - omega)
  double mass_slope = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t window_points = 0;
};

/// Small-omega expansions at nodes with omega <= small_max and log-log slopes
/// over nodes with omega >= large_min.
AsymptoticReport asymptotic_check(const FrequencyCurve& curve, const RadialProfile& cubic_reference,
                                  double small_max = 0.01, double large_min = 0.17);

/// Index of the grid minimum of the mass; ties within 1e-10 relative resolve to
/// the middle of the flat set.
double mass_argmin(const FrequencyCurve& curve, double* spacing = nullptr);

}  // namespace cqnls
