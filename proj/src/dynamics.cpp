#include "cqnls/dynamics.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <numbers>

#include "cqnls/errors.hpp"
#include "cqnls/shooting.hpp"
#include "cqnls/tridiagonal.hpp"

namespace cqnls {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double phi(double rho) { return rho * rho * (0.5 - rho / 3.0); }

// (Phi(b) - Phi(a))/(b - a) for Phi' = rho - rho^2.
double midpoint_focusing(double a, double b) { return 0.5 * (a + b) - (a * a + a * b + b * b) / 3.0; }

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::empirically_stable: return "empirically_stable";
    case Verdict::empirically_unstable: return "empirically_unstable";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

double discrete_mass(const EvolutionState& s) {
  double sum = 0.0;
  for (const auto& v : s.w) sum += std::norm(v);
  return kFourPi * s.dr * sum;
}

double discrete_energy(const EvolutionState& s, bool nonlinear) {
  const std::size_t n = s.intervals();
  double kin = 0.0, pot = 0.0;
  for (std::size_t i = 0; i < n; ++i) kin += std::norm(s.w[i + 1] - s.w[i]);
  if (nonlinear)
    for (std::size_t i = 1; i < n; ++i) {
      const double r = s.dr * static_cast<double>(i);
      pot += r * r * phi(std::norm(s.w[i]) / (r * r));
    }
  return kFourPi * s.dr * (0.5 * kin / (s.dr * s.dr) - 0.5 * pot);
}

double radial_current(const EvolutionState& s) {
  const std::size_t n = s.intervals();
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) sum += std::imag(std::conj(s.w[i]) * (s.w[i + 1] - s.w[i - 1]));
  return 2.0 * kFourPi * 0.5 * sum;
}

EvolutionState state_from(const DiscreteSoliton& soliton, double factor) {
  EvolutionState s;
  s.dr = soliton.dr;
  s.w.resize(soliton.w.size());
  for (std::size_t i = 0; i < s.w.size(); ++i) s.w[i] = factor * soliton.w[i];
  return s;
}

namespace {

LedgerEntry snapshot(const EvolutionState& s, bool nonlinear) {
  LedgerEntry e;
  e.time = s.time;
  e.mass = discrete_mass(s);
  e.energy = discrete_energy(s, nonlinear);
  e.momentum = 0.0;
  e.radial_current = radial_current(s);
  e.absorbed_mass = s.absorbed_mass;
  e.absorbed_energy = s.absorbed_energy;
  return e;
}

double kinetic(const EvolutionState& s) {
  double kin = 0.0;
  for (std::size_t i = 0; i + 1 < s.w.size(); ++i) kin += std::norm(s.w[i + 1] - s.w[i]);
  return kFourPi * 0.5 * kin / s.dr;
}

}  // namespace

EvolutionState evolve(EvolutionState s, double t_end, const EvolveConfig& cfg, const Observer& observer) {
  const std::size_t n = s.intervals();
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "evolution grid too small");
  if (!(cfg.dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(t_end >= s.time)) throw Error(ErrorCode::InvalidArgument, "t_end precedes the current time");
  if (std::abs(s.w.front()) != 0.0 || std::abs(s.w.back()) != 0.0)
    throw Error(ErrorCode::InvalidArgument, "w must vanish at r = 0 and r = R");

  const auto steps = static_cast<long>(std::ceil((t_end - s.time) / cfg.dt - 1e-9));
  const double dt = steps > 0 ? (t_end - s.time) / static_cast<double>(steps) : cfg.dt;
  const long every = std::max(1L, std::lround(cfg.ledger_interval / dt));
  const double t0 = s.time;
  const double h2 = s.dr * s.dr;
  const std::size_t m = n - 1;

  std::vector<double> damp(n + 1, 1.0);
  const bool sponge = cfg.sponge_strength > 0.0 && cfg.sponge_fraction > 0.0;
  if (sponge) {
    const double R = s.radius(), rs = R * (1.0 - cfg.sponge_fraction);
    for (std::size_t i = 0; i <= n; ++i) {
      const double r = s.dr * static_cast<double>(i);
      if (r > rs) damp[i] = std::exp(-cfg.sponge_strength * std::pow((r - rs) / (R - rs), 2) * dt);
    }
  }

  auto record = [&] {
    LedgerEntry e = snapshot(s, cfg.nonlinear);
    if (observer) observer(s, e);
    s.ledger.push_back(e);
  };
  if (s.ledger.empty() || s.ledger.back().time != s.time) record();
  const double mass0 = s.ledger.back().mass + s.ledger.back().absorbed_mass;
  const double energy0 = s.ledger.back().energy + s.ledger.back().absorbed_energy;
  const double energy_scale = std::max(std::abs(energy0), kinetic(s));

  std::vector<double> rho_old(n + 1, 0.0), inv_r2(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double r = s.dr * static_cast<double>(i);
    inv_r2[i] = 1.0 / (r * r);
  }
  const Complex two_i_dt(0.0, 2.0 / dt);
  std::vector<Complex> sub(m, Complex(1.0 / h2)), sup(m, Complex(1.0 / h2)), diag(m), rhs(m);
  std::vector<Complex> z(m), next(n + 1, 0.0);

  for (long step = 1; step <= steps; ++step) {
    for (std::size_t i = 1; i < n; ++i) rho_old[i] = std::norm(s.w[i]) * inv_r2[i];
    // (2i/dt + D2 + G) z = (2i/dt) w with z = (w_new + w)/2.
    for (std::size_t k = 0; k < m; ++k) {
      z[k] = s.w[k + 1];
      rhs[k] = two_i_dt * s.w[k + 1];
    }
    int it = 0;
    for (;; ++it) {
      if (it >= cfg.inner_max_iterations)
        throw Error(ErrorCode::InnerSolveDiverged,
                    "fixed-point inner solve did not converge at t = " + fmt_num(s.time));
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = k + 1;
        double g = 0.0;
        if (cfg.nonlinear) {
          const double rho_new = std::norm(2.0 * z[k] - s.w[i]) * inv_r2[i];
          g = midpoint_focusing(rho_old[i], rho_new);
        }
        diag[k] = two_i_dt - 2.0 / h2 + g;
      }
      auto zn = solve_tridiagonal<Complex>(sub, diag, sup, rhs);
      double diff = 0.0, size = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        diff = std::max(diff, std::abs(zn[k] - z[k]));
        size = std::max(size, std::abs(zn[k]));
        if (!std::isfinite(std::abs(zn[k])))
          throw Error(ErrorCode::InnerSolveDiverged, "non-finite inner iterate at t = " + fmt_num(s.time));
      }
      z.swap(zn);
      if (!cfg.nonlinear || diff <= cfg.inner_tolerance * std::max(size, 1e-300)) break;
    }
    for (std::size_t k = 0; k < m; ++k) s.w[k + 1] = 2.0 * z[k] - s.w[k + 1];
    s.time = t0 + dt * static_cast<double>(step);

    if (sponge) {
      const double mb = discrete_mass(s), eb = discrete_energy(s, cfg.nonlinear);
      for (std::size_t i = 0; i <= n; ++i) s.w[i] *= damp[i];
      s.absorbed_mass += mb - discrete_mass(s);
      s.absorbed_energy += eb - discrete_energy(s, cfg.nonlinear);
    }

    if (step % every == 0 || step == steps) {
      record();
      const auto& e = s.ledger.back();
      const double dm = std::abs(e.mass + e.absorbed_mass - mass0) / mass0;
      const double de = std::abs(e.energy + e.absorbed_energy - energy0) / energy_scale;
      if (dm > cfg.conservation_tolerance || de > cfg.conservation_tolerance)
        throw Error(ErrorCode::ConservationBreach, "relative mass drift " + fmt_num(dm) +
                                                       ", energy drift " + fmt_num(de) + " at t = " +
                                                       fmt_num(s.time));
    }
  }
  return s;
}

namespace {

// H^1 inner products on w: 4 pi sum (conj(a) b dr + conj(da) db / dr).
struct OrbitFamily {
  double lo = 0.0, step = 0.0;
  std::vector<std::vector<double>> w;
  std::vector<double> norm2;
};

double h1_norm2(const std::vector<double>& w, double dr) {
  double s = 0.0, d = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * w[i];
  for (std::size_t i = 0; i + 1 < w.size(); ++i) d += (w[i + 1] - w[i]) * (w[i + 1] - w[i]);
  return kFourPi * (s * dr + d / dr);
}

double distance(const OrbitFamily& fam, const EvolutionState& s) {
  const std::size_t n = s.w.size();
  double ww = 0.0;
  for (std::size_t i = 0; i < n; ++i) ww += std::norm(s.w[i]) * s.dr;
  for (std::size_t i = 0; i + 1 < n; ++i) ww += std::norm(s.w[i + 1] - s.w[i]) / s.dr;
  ww *= kFourPi;
  std::vector<double> d2(fam.w.size());
  for (std::size_t j = 0; j < fam.w.size(); ++j) {
    const auto& p = fam.w[j];
    Complex ip = 0.0;
    for (std::size_t i = 0; i < n; ++i) ip += s.w[i] * p[i] * s.dr;
    for (std::size_t i = 0; i + 1 < n; ++i) ip += (s.w[i + 1] - s.w[i]) * (p[i + 1] - p[i]) / s.dr;
    // Optimal phase aligns e^{i theta} P with w, leaving |<w, P>|.
    d2[j] = std::max(0.0, ww + fam.norm2[j] - 2.0 * kFourPi * std::abs(ip));
  }
  const auto best = static_cast<std::size_t>(std::min_element(d2.begin(), d2.end()) - d2.begin());
  double result = d2[best];
  if (d2.size() >= 4) {
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline(d2.begin(), d2.end(), fam.lo, fam.step);
    double a = fam.lo + fam.step * static_cast<double>(best == 0 ? 0 : best - 1);
    double b = fam.lo + fam.step * static_cast<double>(std::min(best + 1, d2.size() - 1));
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = spline(c), fd = spline(d);
    for (int it = 0; it < 60 && b - a > 1e-12 * fam.step; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = spline(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = spline(d);
      }
    }
    result = std::min(result, std::max(0.0, std::min(fc, fd)));
  }
  return std::sqrt(result);
}

}  // namespace

StabilityReport stability_experiment(Frequency omega, double perturbation_size, double t_end,
                                     const StabilityConfig& cfg) {
  if (!omega.in_window())
    throw Error(ErrorCode::FrequencyOutOfWindow, "omega = " + fmt_num(omega.value()) + " is outside (0, 3/16)");
  if (!(perturbation_size >= 0.0 && perturbation_size <= 0.05))
    throw Error(ErrorCode::InvalidArgument, "perturbation size must lie in [0, 0.05]");
  const double w0 = omega.value();
  const auto ground = solve_ground_state(omega, cfg.shooting);
  const double radius = cfg.radius > 0.0 ? cfg.radius : 2.0 * ground.truncation_radius;
  const auto centre = discrete_ground_state(ground, cfg.dr, radius);

  OrbitFamily fam;
  const int nf = std::max(cfg.family_size, 1);
  const double lo = std::max(w0 * (1.0 - cfg.family_window), 1e-6);
  const double hi = std::min(w0 * (1.0 + cfg.family_window), 0.5 * (w0 + kOmegaMax));
  fam.lo = lo;
  fam.step = nf > 1 ? (hi - lo) / (nf - 1) : 0.0;
  for (int j = 0; j < nf; ++j) {
    const double wj = lo + fam.step * j;
    const auto dj = discrete_ground_state(solve_ground_state(Frequency(wj), cfg.shooting), cfg.dr, radius);
    fam.norm2.push_back(h1_norm2(dj.w, cfg.dr));
    fam.w.push_back(dj.w);
  }

  StabilityReport rep;
  rep.omega = w0;
  rep.perturbation_size = perturbation_size;
  rep.t_end = t_end;
  rep.dt = cfg.evolve.dt;
  rep.stable_factor = cfg.stable_factor;
  rep.unstable_factor = cfg.unstable_factor;

  EvolveConfig ec = cfg.evolve;
  ec.ledger_interval = cfg.sample_interval;
  auto observer = [&](const EvolutionState& s, LedgerEntry& e) { e.distance = distance(fam, s); };
  const auto final = evolve(state_from(centre, 1.0 + perturbation_size), t_end, ec, observer);
  rep.ledger = final.ledger;
  rep.initial_distance = rep.ledger.front().distance;
  for (const auto& e : rep.ledger) rep.max_modulated_distance = std::max(rep.max_modulated_distance, e.distance);
  const double floor = 1e-6 * std::sqrt(h1_norm2(centre.w, cfg.dr));
  const double base = std::max(rep.initial_distance, floor);
  rep.growth_ratio = rep.max_modulated_distance / base;
  if (rep.max_modulated_distance <= cfg.stable_factor * base)
    rep.verdict = Verdict::empirically_stable;
  else if (rep.growth_ratio >= cfg.unstable_factor)
    rep.verdict = Verdict::empirically_unstable;
  else
    rep.verdict = Verdict::inconclusive;
  return rep;
}

}  // namespace cqnls
