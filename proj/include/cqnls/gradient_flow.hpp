#pragma once

#include <functional>

#include "cqnls/profile.hpp"

namespace cqnls {

/// Imaginary-time gradient flow for radial ground states in w = r u on a
/// uniform grid with w(0) = w(R) = 0. The Laplacian is discretized with the
/// fourth-order Numerov stencil; each step is semi-implicit (linear part
/// implicit, stabilized nonlinearity explicit) followed by a projection.
struct FlowConfig {
  double radius = 160.0;
  double spacing = 0.02;
  double time_step = 10.0;
  int max_iterations = 20000;
  /// Stop when the relative residual of the discrete equation drops below this.
  double tolerance = 1e-9;
};

struct FlowResult {
  RadialProfile profile;     // u = w/r with fourth-order derivative samples
  double frequency = 0.0;    // Lagrange multiplier (mass flow) or the fixed frequency
  double energy = 0.0;       // E of profile, evaluated by the functionals module
  double mass = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

using RadialSeed = std::function<double(double)>;

/// Minimizes E = int |grad u|^2/2 - u^4/4 + u^6/6 at fixed mass.
/// Throws FlowDiverged if the iterate becomes non-finite or fails to settle.
FlowResult mass_projected_flow(double mass, const RadialSeed& seed, const FlowConfig& cfg = {});

/// Gradient flow on the action at fixed frequency, rescaled onto the Nehari
/// set after every step; with quintic = 0 this targets the cubic reference state.
FlowResult nehari_projected_flow(double omega, double quintic, const RadialSeed& seed,
                                 const FlowConfig& cfg = {});

/// Builds a profile from samples of w = r u on a uniform grid starting at 0,
/// using fourth-order differences for u'.
RadialProfile profile_from_w(const std::vector<double>& w, double h);

}  // namespace cqnls
