#pragma once

#include <string_view>
#include <vector>

#include "cqnls/frequency_curves.hpp"
#include "cqnls/gradient_flow.hpp"

namespace cqnls {

/// A real number or +infinity. Infinity is a state, never a stored float.
class ExtendedReal {
 public:
  static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }
  static ExtendedReal finite(double v) { return ExtendedReal(false, v); }

  bool is_infinite() const { return infinite_; }
  /// Throws InvalidArgument when infinite.
  double value() const;

 private:
  ExtendedReal(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

enum class Branch { lower_branch, upper_branch, critical };
std::string_view to_string(Branch b);

struct ClassificationResult {
  double prescribed_mass = 0.0;
  int count = 0;
  std::vector<double> frequencies;
  std::vector<Branch> branch_labels;
  std::vector<Stability> stability_labels;
  std::vector<double> masses;  // M(P_omega) re-solved at each returned frequency
  int solves = 0;
};

struct LandscapeOptions {
  ShootingConfig shooting;
  /// |m - m0| <= mass_tolerance * m0 counts as m = m0.
  double mass_tolerance = 1e-9;
  /// Lower frequency limit when a branch has to be followed below the scan.
  double omega_floor = 1e-4;
};

/// Positive normalized solutions of prescribed mass m, one per monotone
/// branch of M(P_omega) on either side of omega_star.
ClassificationResult classify_normalized(double m, const FrequencyCurve& curve, const CriticalFrequencies& crit,
                                         const LandscapeOptions& opt = {});

enum class MinimizerKind { none, ground_state, rescaled_soliton, boundary_q1 };
std::string_view to_string(MinimizerKind k);

/// Landscape regime of a mass relative to the thresholds m_threshold,
/// m0 and M(Q1) (the order m_threshold < m0 < M(Q1) is measured).
enum class LandscapeCase {
  below_threshold,       // m < m_threshold
  rescaled_only,         // m_threshold <= m < m0
  ground_state_positive, // m0 <= m < M(Q1)
  boundary,              // m = M(Q1)
  negative_energy,       // m > M(Q1)
};
std::string_view to_string(LandscapeCase c);

struct LandscapeRecord {
  double mass = 0.0;
  LandscapeCase regime = LandscapeCase::below_threshold;
  ExtendedReal e_min = ExtendedReal::finite(0.0);
  ExtendedReal e_min_v = ExtendedReal::infinity();
  bool e_min_achieved = false;
  bool e_min_v_achieved = false;
  MinimizerKind minimizer_kind = MinimizerKind::none;
  double minimizer_omega = 0.0;  // omega of P_omega or of the ground state behind R_omega
  ClassificationResult normalized;
  std::vector<double> rescaled_omegas;  // R_omega with M(R_omega) = m
  std::vector<double> rescaled_energies;
};

LandscapeRecord e_min_landscape(double m, const FrequencyCurve& curve, const CriticalFrequencies& crit,
                                const LandscapeOptions& opt = {});

/// Twenty masses covering all five regimes: five below m_threshold, four in
/// [m_threshold, m0), five in (m0, M(Q1)), M(Q1) itself, five above.
std::vector<double> landscape_mass_grid(const CriticalFrequencies& crit);

struct FlowCertificate {
  double energy = 0.0;
  double frequency = 0.0;
  std::vector<double> seed_energies;
};

/// Best energy over mass-projected gradient flows from Gaussian seeds of
/// widths 4, 8 and 16.
FlowCertificate certify_e_min_by_flow(double m, const FlowConfig& cfg = {}, unsigned workers = 1);

}  // namespace cqnls
