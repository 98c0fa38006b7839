#pragma once

namespace cqnls {

/// Closed-form one-dimensional ground state of -phi'' + omega phi - phi^3 + phi^5 = 0:
/// phi(x) = 2 sqrt(omega / (1 + sqrt(1 - 16 omega/3) cosh(2 sqrt(omega) x))).
/// Throws FrequencyOutOfWindow outside (0, 3/16).
double soliton_1d(double omega, double x);
double soliton_1d_derivative(double omega, double x);

/// Integrals over the real line of the closed-form soliton by the toolkit's
/// composite rule (one-dimensional mode) and by adaptive Gauss-Kronrod.
struct Quadrature1dReport {
  double omega = 0.0;
  double spacing = 0.0;
  double length = 0.0;  // half-width of the sampled interval
  double mass = 0.0, mass_reference = 0.0;
  double grad_sq = 0.0, grad_sq_reference = 0.0;
  double l4 = 0.0, l4_reference = 0.0;
  double l6 = 0.0, l6_reference = 0.0;
  double max_relative_error = 0.0;
  /// (int phi'^2 + omega phi^2 + phi^6 - phi^4) / int phi'^2 under the composite rule.
  double nehari_residual = 0.0;
};

Quadrature1dReport validate_quadrature_1d(double omega, double spacing = 0.01);

}  // namespace cqnls
