#include "cqnls/frequency_curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <numeric>

#include "cqnls/errors.hpp"
#include "cqnls/parallel.hpp"
#include "cqnls/root_finding.hpp"
#include "cqnls/shooting.hpp"
#include "cqnls/soliton_geometry.hpp"

namespace cqnls {

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::critical: return "critical";
    case Stability::unclassified: return "unclassified";
  }
  return "unknown";
}

std::vector<double> FrequencyCurve::omegas() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.omega);
  return out;
}

std::vector<double> default_scan_grid(std::size_t n, double lo, double hi) {
  if (n == 0) throw Error(ErrorCode::EmptyGrid, "scan grid needs at least one node");
  if (!(lo > 0.0 && lo < hi && hi < kOmegaMax))
    throw Error(ErrorCode::FrequencyOutOfWindow, "scan range must satisfy 0 < lo < hi < 3/16");
  auto logit = [](double w) { return std::log(w / (kOmegaMax - w)); };
  const double a = logit(lo), b = logit(hi);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    grid[i] = n == 1 ? lo : kOmegaMax / (1.0 + std::exp(-t));
  }
  grid.front() = lo;
  if (n > 1) grid.back() = hi;
  return grid;
}

FrequencyCurvePoint solve_point(double omega, const ShootingConfig& cfg) {
  const auto p = solve_ground_state(Frequency(omega), cfg);
  const auto rep = evaluate(p);
  FrequencyCurvePoint pt;
  pt.omega = omega;
  pt.mass = rep.mass;
  pt.energy = rep.energy;
  pt.beta = rep.beta;
  pt.d_value = rep.energy + 0.5 * omega * rep.mass;
  pt.grad_sq = rep.grad_sq;
  pt.l4 = rep.l4;
  pt.l6 = rep.l6;
  pt.nehari_residual = rep.nehari_residual;
  pt.pohozaev_residual = rep.pohozaev_residual;
  pt.amplitude = p.amplitude;
  pt.truncation_radius = p.truncation_radius;
  pt.grid_spacing = p.spacing();
  const auto rr = evaluate(rescale_soliton(p));
  pt.rescaled_mass = rr.mass;
  pt.rescaled_energy = rr.energy;
  pt.rescaled_beta = rr.beta;
  pt.rescaled_pohozaev = rr.pohozaev;
  return pt;
}

FrequencyCurve scan(std::vector<double> omega_grid, const ScanOptions& opt) {
  if (omega_grid.empty()) throw Error(ErrorCode::EmptyGrid, "scan grid is empty");
  std::sort(omega_grid.begin(), omega_grid.end());
  omega_grid.erase(std::unique(omega_grid.begin(), omega_grid.end()), omega_grid.end());
  const std::size_t n = omega_grid.size();
  std::vector<std::optional<FrequencyCurvePoint>> pts(n);
  std::vector<std::string> errs(n);
  parallel_for(n, opt.workers, [&](std::size_t i) {
    try {
      pts[i] = solve_point(omega_grid[i], opt.shooting);
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  FrequencyCurve curve;
  for (std::size_t i = 0; i < n; ++i) {
    if (pts[i])
      curve.points.push_back(*pts[i]);
    else
      curve.failures.push_back({omega_grid[i], errs[i]});
  }
  return curve;
}

namespace {

struct StencilValues {
  double mass, grad_sq, energy, d;
};

StencilValues stencil_values(double omega, const ShootingConfig& cfg) {
  const auto rep = evaluate(solve_ground_state(Frequency(omega), cfg));
  return {rep.mass, rep.grad_sq, rep.energy, rep.energy + 0.5 * omega * rep.mass};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

FrequencyCurve differentiate(const FrequencyCurve& curve, const ScanOptions& opt) {
  if (curve.points.size() < 5)
    throw Error(ErrorCode::InsufficientPoints, "differentiate needs at least 5 solved points");
  FrequencyCurve out = curve;
  std::vector<std::string> errs(out.points.size());
  parallel_for(out.points.size(), opt.workers, [&](std::size_t i) {
    auto& pt = out.points[i];
    try {
      ShootingConfig cfg = opt.shooting;
      cfg.max_radius = pt.truncation_radius;
      cfg.grid_spacing = pt.grid_spacing;
      cfg.max_domain_doublings = 0;
      const double h = 1e-4 * std::max(pt.omega, 0.01);
      std::array<StencilValues, 4> s;
      const std::array<double, 4> offs{-2.0, -1.0, 1.0, 2.0};
      for (std::size_t k = 0; k < 4; ++k) s[k] = stencil_values(pt.omega + offs[k] * h, cfg);
      const StencilValues c{pt.mass, pt.grad_sq, pt.energy, pt.d_value};
      // Central differences at h and 2h combined by one Richardson step.
      auto first = [&](auto get) { return (get(s[0]) - 8.0 * get(s[1]) + 8.0 * get(s[2]) - get(s[3])) / (12.0 * h); };
      auto second = [&](auto get) {
        return (-get(s[0]) + 16.0 * get(s[1]) - 30.0 * get(c) + 16.0 * get(s[2]) - get(s[3])) / (12.0 * h * h);
      };
      const double dm = first([](const StencilValues& v) { return v.mass; });
      const double dg = first([](const StencilValues& v) { return v.grad_sq; });
      const double de = first([](const StencilValues& v) { return v.energy; });
      const double dd = second([](const StencilValues& v) { return v.d; });
      pt.mass_derivative = dm;
      pt.grad_derivative = dg;
      pt.energy_derivative = de;
      pt.d_second = dd;
      pt.grad_identity_error = rel(dg, 1.5 * pt.mass);
      pt.energy_identity_error = std::abs(de + 0.5 * pt.omega * dm) / std::abs(de);
      pt.d_second_error = rel(dd, 0.5 * dm);
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < errs.size(); ++i)
    if (!errs[i].empty()) out.failures.push_back({out.points[i].omega, "derivative stencil: " + errs[i]});
  return out;
}

double mass_argmin(const FrequencyCurve& curve, double* spacing) {
  const auto& p = curve.points;
  if (p.empty()) throw Error(ErrorCode::EmptyGrid, "no solved points");
  std::size_t k = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i].mass < p[k].mass) k = i;
  const double tol = 1e-10 * p[k].mass;
  std::size_t lo = k, hi = k;
  while (lo > 0 && std::abs(p[lo - 1].mass - p[k].mass) <= tol) --lo;
  while (hi + 1 < p.size() && std::abs(p[hi + 1].mass - p[k].mass) <= tol) ++hi;
  if (spacing) {
    double gap = 0.0;
    if (lo > 0) gap = std::max(gap, p[lo].omega - p[lo - 1].omega);
    if (hi + 1 < p.size()) gap = std::max(gap, p[hi + 1].omega - p[hi].omega);
    *spacing = gap;
  }
  return 0.5 * (p[lo].omega + p[hi].omega);
}

namespace {

FrequencyRoot beta_root(const FrequencyCurve& curve, double target, const ShootingConfig& cfg) {
  const auto& p = curve.points;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if ((p[i].beta - target) * (p[i + 1].beta - target) <= 0.0) {
      auto beta = [](const RadialProfile&, const FunctionalReport& r) { return r.beta; };
      return solve_for_frequency(beta, target, p[i].omega, p[i + 1].omega, cfg, 1e-10 * target, 1e-15);
    }
  }
  throw Error(ErrorCode::TargetNotBracketed,
              "scanned beta values do not bracket " + fmt_num(target));
}

}  // namespace

CriticalFrequencies locate_critical(const FrequencyCurve& curve, const ShootingConfig& cfg) {
  const auto lower = beta_root(curve, 1.0 / 3.0, cfg);
  const auto upper = beta_root(curve, 1.0, cfg);
  CriticalFrequencies c;
  c.omega_star = lower.omega;
  c.omega_upper_star = upper.omega;
  c.beta_at_star = lower.value;
  c.beta_at_upper_star = upper.value;
  c.m0 = lower.report.mass;
  c.m_q1 = upper.report.mass;
  c.m_threshold = 4.0 / (3.0 * std::sqrt(3.0)) * c.m_q1;
  c.mass_argmin = mass_argmin(curve, &c.argmin_spacing);
  c.solves = lower.solves + upper.solves;
  return c;
}

FrequencyCurve classify_stability(const FrequencyCurve& curve, const CriticalFrequencies& crit, double tol) {
  FrequencyCurve out = curve;
  for (auto& pt : out.points) {
    if (std::abs(pt.omega - crit.omega_star) < tol)
      pt.stability = Stability::critical;
    else
      pt.stability = pt.omega < crit.omega_star ? Stability::unstable : Stability::stable;
    pt.slope_agrees.reset();
    if (pt.mass_derivative && pt.stability != Stability::critical)
      pt.slope_agrees = (pt.stability == Stability::stable) == (*pt.mass_derivative > 0.0);
  }
  return out;
}

AsymptoticReport asymptotic_check(const FrequencyCurve& curve, const RadialProfile& g, double small_max,
                                  double large_min) {
  if (g.kind != ProfileKind::cubic_reference)
    throw Error(ErrorCode::KindMismatch, "asymptotic_check needs the cubic reference state");
  const auto gr = evaluate(g);
  AsymptoticReport rep;
  std::vector<double> x, yb, ym;
  for (const auto& p : curve.points) {
    if (p.omega <= small_max) {
      const double s = std::sqrt(p.omega);
      SmallFrequencyCheck c;
      c.omega = p.omega;
      c.mass_leading_error = rel(s * p.mass, gr.mass);
      c.mass_error = rel(p.mass, gr.mass / s + 0.5 * s * gr.l6);
      c.energy_error = rel(p.energy, 0.5 * s * gr.mass - p.omega * s / 12.0 * gr.l6);
      c.beta_error = rel(p.beta, p.omega * gr.beta);
      rep.small.push_back(c);
    }
    if (p.omega >= large_min) {
      x.push_back(std::log(kOmegaMax - p.omega));
      yb.push_back(std::log(p.beta));
      ym.push_back(std::log(p.mass));
    }
  }
  if (rep.small.empty() || x.size() < 2)
    throw Error(ErrorCode::InsufficientCoverage, "curve needs nodes with omega <= " + fmt_num(small_max) +
                                                     " and at least two with omega >= " + fmt_num(large_min));
  auto slope = [&](const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
  };
  rep.beta_slope = slope(yb);
  rep.mass_slope = slope(ym);
  rep.window_points = x.size();
  rep.window_lo = kOmegaMax - std::exp(x.front());
  rep.window_hi = kOmegaMax - std::exp(x.back());
  return rep;
}

}  // namespace cqnls
