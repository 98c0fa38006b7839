#pragma once

#include "cqnls/profile.hpp"

namespace cqnls {

/// Integrals over R^3 of a radial profile. Residuals are relative to grad_sq
/// and are NaN for profiles that do not solve a ground-state equation.
struct FunctionalReport {
  double mass = 0.0;      // int u^2
  double energy = 0.0;    // int |grad u|^2/2 - u^4/4 + u^6/6
  double pohozaev = 0.0;  // int |grad u|^2 + u^6 - 3u^4/4
  double beta = 0.0;      // l6 / grad_sq
  double grad_sq = 0.0;
  double l4 = 0.0;
  double l6 = 0.0;
  double nehari_residual = 0.0;
  double pohozaev_residual = 0.0;
};

FunctionalReport evaluate(const RadialProfile& profile);

/// Dilation- and amplitude-invariant quotient
/// ||u||_2 ||u||_6^(3a/(1+a)) ||grad u||_2^(3/(1+a)) / ||u||_4^4.
double f_alpha(const FunctionalReport& report, double alpha);
double f_alpha(const RadialProfile& profile, double alpha);

/// d = E + (omega/2) M for a ground state.
double d_scalar(const RadialProfile& profile);

}  // namespace cqnls
