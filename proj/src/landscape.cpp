#include "cqnls/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>

#include "cqnls/errors.hpp"
#include "cqnls/parallel.hpp"
#include "cqnls/root_finding.hpp"
#include "cqnls/shooting.hpp"
#include "cqnls/soliton_geometry.hpp"

namespace cqnls {

double ExtendedReal::value() const {
  if (infinite_) throw Error(ErrorCode::InvalidArgument, "value of an infinite extended real");
  return value_;
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::lower_branch: return "lower_branch";
    case Branch::upper_branch: return "upper_branch";
    case Branch::critical: return "critical";
  }
  return "unknown";
}

std::string_view to_string(MinimizerKind k) {
  switch (k) {
    case MinimizerKind::none: return "none";
    case MinimizerKind::ground_state: return "ground_state";
    case MinimizerKind::rescaled_soliton: return "rescaled_soliton";
    case MinimizerKind::boundary_q1: return "boundary_q1";
  }
  return "unknown";
}

std::string_view to_string(LandscapeCase c) {
  switch (c) {
    case LandscapeCase::below_threshold: return "below_threshold";
    case LandscapeCase::rescaled_only: return "rescaled_only";
    case LandscapeCase::ground_state_positive: return "ground_state_positive";
    case LandscapeCase::boundary: return "boundary";
    case LandscapeCase::negative_energy: return "negative_energy";
  }
  return "unknown";
}

namespace {

struct Sample {
  double omega;
  double value;
};

// Root of value(omega) = target on the first sign change along `samples`
// (ordered by omega); nullopt if there is none.
std::optional<FrequencyRoot> branch_root(const std::vector<Sample>& samples, double target, const ProfileScalar& g,
                                         const ShootingConfig& cfg) {
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double a = samples[i].value - target, b = samples[i + 1].value - target;
    if (a == 0.0 || b == 0.0 || (a < 0.0) != (b < 0.0))
      return solve_for_frequency(g, target, std::min(samples[i].omega, samples[i + 1].omega),
                                 std::max(samples[i].omega, samples[i + 1].omega), cfg, 1e-9 * target);
  }
  return std::nullopt;
}

// Follows a branch below the scan by halving omega until value exceeds target.
// Returns the extended samples (prepended) or leaves them unchanged.
void extend_down(std::vector<Sample>& samples, double target, const ProfileScalar& g, const LandscapeOptions& opt,
                 int* solves) {
  double w = samples.front().omega;
  while (samples.front().value < target && w > opt.omega_floor) {
    w = std::max(0.5 * w, opt.omega_floor);
    const auto p = solve_ground_state(Frequency(w), opt.shooting);
    ++*solves;
    samples.insert(samples.begin(), Sample{w, g(p, evaluate(p))});
  }
}

double mass_of(const RadialProfile&, const FunctionalReport& r) { return r.mass; }

double rescaled_mass_of(const RadialProfile&, const FunctionalReport& r) {
  return rescaled_mass_formula(r.beta, r.mass);
}

}  // namespace

ClassificationResult classify_normalized(double m, const FrequencyCurve& curve, const CriticalFrequencies& crit,
                                         const LandscapeOptions& opt) {
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidArgument, "prescribed mass must be positive");
  ClassificationResult res;
  res.prescribed_mass = m;
  if (std::abs(m - crit.m0) <= opt.mass_tolerance * crit.m0) {
    res.count = 1;
    res.frequencies = {crit.omega_star};
    res.branch_labels = {Branch::critical};
    res.stability_labels = {Stability::critical};
    res.masses = {crit.m0};
    return res;
  }
  if (m < crit.m0) return res;

  std::vector<Sample> lower, upper;
  for (const auto& p : curve.points) {
    if (p.omega < crit.omega_star) lower.push_back({p.omega, p.mass});
    if (p.omega > crit.omega_star) upper.push_back({p.omega, p.mass});
  }
  lower.push_back({crit.omega_star, crit.m0});
  upper.insert(upper.begin(), Sample{crit.omega_star, crit.m0});
  double top = 0.0;
  for (const auto& s : upper) top = std::max(top, s.value);
  if (m > top)
    throw Error(ErrorCode::MassBeyondScan, "mass " + fmt_num(m) + " exceeds the largest scanned mass " +
                                               fmt_num(top));
  extend_down(lower, m, mass_of, opt, &res.solves);

  auto add = [&](const std::optional<FrequencyRoot>& r, Branch b) {
    if (!r) return;
    res.solves += r->solves;
    res.frequencies.push_back(r->omega);
    res.branch_labels.push_back(b);
    res.stability_labels.push_back(b == Branch::lower_branch ? Stability::unstable : Stability::stable);
    res.masses.push_back(r->report.mass);
  };
  // Mass decreases along the lower branch; search from omega_star downward.
  std::vector<Sample> lower_rev(lower.rbegin(), lower.rend());
  auto lo_root = branch_root(lower_rev, m, mass_of, opt.shooting);
  if (!lo_root)
    throw Error(ErrorCode::MassBeyondScan, "lower branch does not reach mass " + fmt_num(m) +
                                               " above omega = " + fmt_num(opt.omega_floor));
  add(lo_root, Branch::lower_branch);
  add(branch_root(upper, m, mass_of, opt.shooting), Branch::upper_branch);
  res.count = static_cast<int>(res.frequencies.size());
  return res;
}

LandscapeRecord e_min_landscape(double m, const FrequencyCurve& curve, const CriticalFrequencies& crit,
                                const LandscapeOptions& opt) {
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidArgument, "prescribed mass must be positive");
  LandscapeRecord rec;
  rec.mass = m;
  const double mq1 = crit.m_q1;
  const bool at_q1 = std::abs(m - mq1) <= opt.mass_tolerance * mq1;

  if (m >= crit.m0 || std::abs(m - crit.m0) <= opt.mass_tolerance * crit.m0)
    rec.normalized = classify_normalized(m, curve, crit, opt);

  // Ground-state candidates at mass m.
  double best_gs = std::numeric_limits<double>::infinity();
  double best_gs_omega = 0.0;
  for (double w : rec.normalized.frequencies) {
    const auto rep = evaluate(solve_ground_state(Frequency(w), opt.shooting));
    if (rep.energy < best_gs) {
      best_gs = rep.energy;
      best_gs_omega = w;
    }
  }

  if (at_q1) {
    rec.regime = LandscapeCase::boundary;
    rec.e_min = ExtendedReal::finite(0.0);
    rec.e_min_v = ExtendedReal::finite(0.0);
    rec.e_min_achieved = rec.e_min_v_achieved = true;
    rec.minimizer_kind = MinimizerKind::boundary_q1;
    rec.minimizer_omega = crit.omega_upper_star;
    return rec;
  }
  if (m > mq1) {
    rec.regime = LandscapeCase::negative_energy;
    rec.e_min = rec.e_min_v = ExtendedReal::finite(best_gs);
    rec.e_min_achieved = rec.e_min_v_achieved = true;
    rec.minimizer_kind = MinimizerKind::ground_state;
    rec.minimizer_omega = best_gs_omega;
    return rec;
  }

  // m < M(Q1): E_min = 0 is not achieved.
  rec.e_min = ExtendedReal::finite(0.0);
  rec.e_min_achieved = false;
  if (m < crit.m_threshold * (1.0 - opt.mass_tolerance)) {
    rec.regime = LandscapeCase::below_threshold;
    rec.e_min_v = ExtendedReal::infinity();
    return rec;
  }
  rec.regime = m < crit.m0 ? LandscapeCase::rescaled_only : LandscapeCase::ground_state_positive;

  // Rescaled solitons of mass m: M(R_omega) decreases to m_threshold at
  // omega_upper_star and increases beyond it.
  std::vector<Sample> left, right;
  for (const auto& p : curve.points) {
    const double v = rescaled_mass_formula(p.beta, p.mass);
    if (p.omega < crit.omega_upper_star) left.push_back({p.omega, v});
    if (p.omega > crit.omega_upper_star) right.push_back({p.omega, v});
  }
  const double r_min = rescaled_mass_formula(crit.beta_at_upper_star, crit.m_q1);
  left.push_back({crit.omega_upper_star, r_min});
  right.insert(right.begin(), Sample{crit.omega_upper_star, r_min});
  int solves = 0;
  extend_down(left, m, rescaled_mass_of, opt, &solves);
  std::vector<Sample> left_rev(left.rbegin(), left.rend());
  double best_r = std::numeric_limits<double>::infinity();
  double best_r_omega = 0.0;
  for (const auto& root : {branch_root(left_rev, m, rescaled_mass_of, opt.shooting),
                           branch_root(right, m, rescaled_mass_of, opt.shooting)}) {
    if (!root) continue;
    const double e = rescaled_energy_formula(root->report.beta, root->report.grad_sq);
    rec.rescaled_omegas.push_back(root->omega);
    rec.rescaled_energies.push_back(e);
    if (e < best_r) {
      best_r = e;
      best_r_omega = root->omega;
    }
  }
  if (m <= crit.m_threshold) {
    // Only R at omega_upper_star has mass m_threshold.
    best_r = rescaled_energy_formula(crit.beta_at_upper_star,
                                     evaluate(solve_ground_state(Frequency(crit.omega_upper_star), opt.shooting)).grad_sq);
    best_r_omega = crit.omega_upper_star;
    rec.rescaled_omegas = {best_r_omega};
    rec.rescaled_energies = {best_r};
  }
  if (!std::isfinite(best_r) && !std::isfinite(best_gs))
    throw Error(ErrorCode::MassBeyondScan, "no rescaled soliton or ground state of mass " + fmt_num(m) +
                                               " on the scanned range");
  rec.e_min_v_achieved = true;
  if (best_gs < best_r) {
    rec.e_min_v = ExtendedReal::finite(best_gs);
    rec.minimizer_kind = MinimizerKind::ground_state;
    rec.minimizer_omega = best_gs_omega;
  } else {
    rec.e_min_v = ExtendedReal::finite(best_r);
    rec.minimizer_kind = MinimizerKind::rescaled_soliton;
    rec.minimizer_omega = best_r_omega;
  }
  return rec;
}

std::vector<double> landscape_mass_grid(const CriticalFrequencies& crit) {
  const double thr = crit.m_threshold, m0 = crit.m0, mq1 = crit.m_q1;
  if (!(thr < m0 && m0 < mq1))
    throw Error(ErrorCode::InvalidArgument, "expected m_threshold < m0 < M(Q1)");
  std::vector<double> g;
  for (double t : {0.5, 0.62, 0.74, 0.86, 0.98}) g.push_back(t * thr);
  for (double t : {0.0, 0.25, 0.5, 0.75}) g.push_back(thr + t * (m0 - thr));
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) g.push_back(m0 + t * (mq1 - m0));
  g.push_back(mq1);
  for (double t : {1.2, 1.4, 1.6, 1.8, 2.0}) g.push_back(t * mq1);
  return g;
}

FlowCertificate certify_e_min_by_flow(double m, const FlowConfig& cfg, unsigned workers) {
  const std::vector<double> widths{4.0, 8.0, 16.0};
  std::vector<std::optional<FlowResult>> runs(widths.size());
  std::vector<std::string> errs(widths.size());
  parallel_for(widths.size(), workers, [&](std::size_t i) {
    const double s = widths[i];
    try {
      runs[i] = mass_projected_flow(m, [s](double r) { return std::exp(-r * r / (s * s)); }, cfg);
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  FlowCertificate out;
  out.energy = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i]) continue;
    out.seed_energies.push_back(runs[i]->energy);
    if (runs[i]->energy < out.energy) {
      out.energy = runs[i]->energy;
      out.frequency = runs[i]->frequency;
    }
  }
  if (out.seed_energies.empty()) throw Error(ErrorCode::FlowDiverged, "every seed failed: " + errs.front());
  return out;
}

}  // namespace cqnls
