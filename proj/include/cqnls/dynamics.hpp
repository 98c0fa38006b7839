#pragma once

#include <complex>
#include <functional>
#include <string_view>
#include <vector>

#include "cqnls/discrete_soliton.hpp"
#include "cqnls/profile.hpp"

namespace cqnls {

using Complex = std::complex<double>;

struct LedgerEntry {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  /// Q(u) = int 2 Im(conj(u) grad u): zero for radial data by symmetry.
  double momentum = 0.0;
  /// 8 pi int Im(conj(w) w_r) dr: the radial flux, the only nontrivial current.
  double radial_current = 0.0;
  double absorbed_mass = 0.0;
  double absorbed_energy = 0.0;
  double distance = 0.0;  // filled by observers such as stability_experiment
};

/// w = r phi on r_i = i dr, i = 0..n, w_0 = w_n = 0.
struct EvolutionState {
  double dr = 0.05;
  std::vector<Complex> w;
  double time = 0.0;
  std::vector<LedgerEntry> ledger;
  double absorbed_mass = 0.0;
  double absorbed_energy = 0.0;

  std::size_t intervals() const { return w.empty() ? 0 : w.size() - 1; }
  double radius() const { return dr * static_cast<double>(intervals()); }
};

struct EvolveConfig {
  double dt = 0.01;
  double ledger_interval = 0.5;
  double inner_tolerance = 1e-12;
  int inner_max_iterations = 50;
  /// Absorbing layer on the outer sponge_fraction of [0, R]; damping rate
  /// sponge_strength ((r - r_s)/(R - r_s))^2. Zero strength disables it.
  double sponge_strength = 1.0;
  double sponge_fraction = 0.125;
  /// Relative drift of mass and energy (absorbed amounts added back).
  double conservation_tolerance = 1e-6;
  bool nonlinear = true;
};

/// 4 pi dr sum |w_i|^2.
double discrete_mass(const EvolutionState& s);
/// 4 pi dr [sum |w_{i+1} - w_i|^2/(2 dr^2) - sum r_i^2 Phi(rho_i)/2], Phi = rho^2/2 - rho^3/3.
double discrete_energy(const EvolutionState& s, bool nonlinear = true);
double radial_current(const EvolutionState& s);

EvolutionState state_from(const DiscreteSoliton& soliton, double factor = 1.0);

using Observer = std::function<void(const EvolutionState&, LedgerEntry&)>;

/// Crank-Nicolson for i w_t + w_rr + (rho - rho^2) w = 0 with the
/// discrete-gradient midpoint nonlinearity (Phi(b) - Phi(a))/(b - a), which
/// conserves the discrete mass and energy exactly up to the inner solve.
/// Appends a ledger entry at t = initial time and every ledger_interval.
/// Throws ConservationBreach or InnerSolveDiverged.
EvolutionState evolve(EvolutionState state, double t_end, const EvolveConfig& cfg = {},
                      const Observer& observer = {});

enum class Verdict { empirically_stable, empirically_unstable, inconclusive };
std::string_view to_string(Verdict v);

struct StabilityConfig {
  EvolveConfig evolve;
  double dr = 0.05;
  double radius = 0.0;  // 0 selects twice the ground state's truncation radius
  double sample_interval = 0.5;
  double family_window = 0.1;  // omega' in omega (1 +- window)
  int family_size = 21;
  double stable_factor = 5.0;
  double unstable_factor = 10.0;
  ShootingConfig shooting;
};

struct StabilityReport {
  double omega = 0.0;
  double perturbation_size = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  double initial_distance = 0.0;
  double max_modulated_distance = 0.0;
  double growth_ratio = 0.0;
  double stable_factor = 0.0;
  double unstable_factor = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<LedgerEntry> ledger;
};

/// Evolves (1 + size) P_omega (discrete ground state) and tracks the H^1
/// distance to the orbit {e^{i theta} P_omega'}, minimized over theta in closed
/// form and over omega' by golden-section search on a cubic spline through a
/// family of discrete ground states.
StabilityReport stability_experiment(Frequency omega, double perturbation_size, double t_end,
                                     const StabilityConfig& cfg = {});

}  // namespace cqnls
