#include "cqnls/profile.hpp"

#include <cmath>

#include "cqnls/errors.hpp"
#include "cqnls/radial_ode.hpp"

namespace cqnls {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FrequencyOutOfWindow: return "FrequencyOutOfWindow";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::ResidualGate: return "ResidualGate";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::TargetNotBracketed: return "TargetNotBracketed";
    case ErrorCode::InsufficientCoverage: return "InsufficientCoverage";
    case ErrorCode::MassBeyondScan: return "MassBeyondScan";
    case ErrorCode::FlowDiverged: return "FlowDiverged";
    case ErrorCode::ConservationBreach: return "ConservationBreach";
    case ErrorCode::InnerSolveDiverged: return "InnerSolveDiverged";
    case ErrorCode::EigSolverStalled: return "EigSolverStalled";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::ground_state: return "ground_state";
    case ProfileKind::rescaled_soliton: return "rescaled_soliton";
    case ProfileKind::cubic_reference: return "cubic_reference";
    case ProfileKind::test_function: return "test_function";
  }
  return "unknown";
}

std::pair<double, double> RadialProfile::at(double radius) const {
  if (r.empty()) throw Error(ErrorCode::InvalidArgument, "empty profile");
  if (radius <= r.front()) return {u.front(), du.front()};
  if (radius >= r.back()) {
    if (decay_rate <= 0.0 || tail_constant == 0.0) return {0.0, 0.0};
    const double e = tail_constant * std::exp(-decay_rate * radius) / radius;
    return {e, -e * (decay_rate + 1.0 / radius)};
  }
  const double h = spacing();
  auto i = static_cast<std::size_t>((radius - r.front()) / h);
  if (i + 1 >= r.size()) i = r.size() - 2;
  const double x0 = r[i], x1 = r[i + 1];
  const double t = (radius - x0) / (x1 - x0);
  const double value = hermite(x0, x1, u[i], u[i + 1], du[i], du[i + 1], radius);
  // Derivative of the cubic Hermite interpolant.
  const double dh = x1 - x0;
  const double slope = ((6 * t * t - 6 * t) * u[i] + (3 * t * t - 4 * t + 1) * dh * du[i] +
                        (-6 * t * t + 6 * t) * u[i + 1] + (3 * t * t - 2 * t) * dh * du[i + 1]) /
                       dh;
  return {value, slope};
}

void ShootingConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (amplitude_bracket && !(amplitude_bracket->first > 0.0 &&
                             amplitude_bracket->first < amplitude_bracket->second))
    bad("amplitude bracket must satisfy 0 < a_lo < a_hi");
  if (!(ode_tolerance > 0.0) || !(bisection_tolerance > 0.0)) bad("tolerances must be positive");
  if (max_radius && !(*max_radius > 0.0)) bad("max_radius must be positive");
  if (matching_window) {
    if (!(matching_window->first < matching_window->second)) bad("matching window must have r_a < r_b");
    if (max_radius && matching_window->second > *max_radius) bad("matching window exceeds max_radius");
  }
  if (!(taylor_start_step > 0.0)) bad("taylor_start_step must be positive");
  if (grid_spacing && !(*grid_spacing > 0.0)) bad("grid_spacing must be positive");
  if (max_domain_doublings < 0) bad("max_domain_doublings must be nonnegative");
  if (!(residual_gate > 0.0) || !(tail_threshold > 0.0) || !(decay_floor > 0.0))
    bad("gates and thresholds must be positive");
  if (!(segment_length > 0.0)) bad("segment_length must be positive");
}

}  // namespace cqnls
