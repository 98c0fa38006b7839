#include "cqnls/shooting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <optional>
#include <vector>

#include "cqnls/errors.hpp"
#include "cqnls/functionals.hpp"
#include "cqnls/quadrature.hpp"

namespace cqnls {

std::string_view to_string(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::CrossesZero: return "CrossesZero";
    case TrajectoryClass::TurnsUpward: return "TurnsUpward";
    case TrajectoryClass::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

double default_max_radius(double omega) { return std::max(40.0 / std::sqrt(omega), 60.0); }

double default_grid_spacing(double omega) { return std::min(0.01 / std::sqrt(omega), 0.02); }

std::pair<double, double> default_amplitude_bracket(const Nonlinearity& nl) {
  if (nl.quintic <= 0.0) return {1e-6, 20.0};
  return {1e-6, nl.plateau_level() * (1.0 - 1e-12)};
}

double plateau_radius_estimate(const Nonlinearity& nl) {
  const double ue = nl.plateau_level();
  const double top = nl.potential(ue);
  constexpr std::size_t n = 2000;
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double u = ue * static_cast<double>(i) / n;
    g[i] = std::sqrt(std::max(0.0, 2.0 * (top - nl.potential(u))));
  }
  const double sigma = radial_integral(g, 0.0, ue / n, 1);
  return 2.0 * sigma / top;
}

namespace {

using State2 = std::array<double, 2>;
using State6 = std::array<double, 6>;

// Integration nodes: "macro" nodes are grid nodes reached exactly by the
// integrator; the interval ending at macro[j] is split into sub[j] steps.
struct Plan {
  double h = 0.0;
  std::size_t n = 0;
  double r_start = 0.0;
  std::vector<std::size_t> macro;
  std::vector<int> sub;

  double r(std::size_t i) const { return h * static_cast<double>(i); }
  double macro_r(std::size_t j) const { return r(macro[j]); }
  double interval_start(std::size_t j) const { return j == 0 ? r_start : macro_r(j - 1); }
};

Plan make_plan(double h, std::size_t n, double r_start, double ode_tolerance) {
  const double s = step_for_tolerance(ode_tolerance);
  const auto stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(s / h + 1e-9)));
  Plan p;
  p.h = h;
  p.n = n;
  p.r_start = r_start;
  std::size_t i = static_cast<std::size_t>(std::floor(r_start / h + 1e-9)) + 1;
  if (i > n) throw Error(ErrorCode::DomainTooSmall, "taylor_start_step exceeds the domain");
  double prev = r_start;
  while (true) {
    const double len = p.r(i) - prev;
    const int by_tol = static_cast<int>(std::ceil(len / s - 1e-9));
    const int by_origin = static_cast<int>(std::ceil(len / (0.2 * prev) - 1e-9));
    p.macro.push_back(i);
    p.sub.push_back(std::max({1, by_tol, by_origin}));
    if (i == n) break;
    prev = p.r(i);
    i = std::min(n, i + stride);
  }
  return p;
}

// Initial state of the integration, parametrized by one unknown. The regular
// start is the series at the origin with the amplitude as parameter. The
// plateau start sits inside a long flat top at r0 and is parametrized by the
// deviation s = plateau_level - u(r0), continued inward with the linearization
// w'' + (2/r) w' = kappa^2 w, w = s g(r)/g(r0), g(r) = sinh(kappa r)/(kappa r).
struct Start {
  bool plateau = false;
  double level = 0.0;
  double kappa = 0.0;
  double r0 = 0.0;

  TaylorStart at(const Nonlinearity& nl, double p, double r) const {
    if (!plateau) return taylor_start(nl, p, r);
    const double ratio = shape(r) / shape(r0);
    const double slope = shape_slope(r) / shape(r0);
    return {level - p * ratio, -p * slope, -ratio, -slope};
  }
  double amplitude(double p) const { return plateau ? level - p / shape(r0) : p; }

 private:
  double shape(double r) const {
    const double x = kappa * r;
    return x < 1e-8 ? 1.0 : std::sinh(x) / x;
  }
  double shape_slope(double r) const {
    const double x = kappa * r;
    if (x < 1e-4) return kappa * x / 3.0;
    return kappa * (x * std::cosh(x) - std::sinh(x)) / (x * x);
  }
};

struct Problem {
  Nonlinearity nl;
  double k = 0.0;  // decay rate sqrt(omega)
  Plan plan;
  Start start;
};

// Advances y over macro intervals [j0, j1) (interval j ends at macro[j]).
// on_step(r, y) is called after every substep and may return false to stop;
// on_macro(j, y) is called at every macro node reached.
template <std::size_t N, class Rhs, class OnStep, class OnMacro>
bool advance(const Plan& plan, Rhs&& rhs, std::array<double, N>& y, std::size_t j0, std::size_t j1,
             OnStep&& on_step, OnMacro&& on_macro) {
  for (std::size_t j = j0; j < j1; ++j) {
    const double a = plan.interval_start(j);
    const double b = plan.macro_r(j);
    const int m = plan.sub[j];
    const double dr = (b - a) / m;
    for (int s = 0; s < m; ++s) {
      const double r = a + dr * s;
      dopri5_step<N>(rhs, r, dr, y);
      if (!on_step(s + 1 == m ? b : r + dr, y)) return false;
    }
    on_macro(j, y);
  }
  return true;
}

struct Trajectory {
  TrajectoryClass cls = TrajectoryClass::Undetermined;
  std::vector<State2> nodes;  // values at macro nodes reached before stopping
};

Trajectory shoot(const Problem& pb, double param, double decay_floor, bool record) {
  const auto ts = pb.start.at(pb.nl, param, pb.plan.r_start);
  const double a = pb.start.amplitude(param);
  State2 y{ts.u, ts.v};
  Trajectory t;
  if (y[0] < 0.0) {
    t.cls = TrajectoryClass::CrossesZero;
    return t;
  }
  if (y[1] > 0.0) {
    t.cls = TrajectoryClass::TurnsUpward;
    return t;
  }
  auto on_step = [&](double, const State2& s) {
    if (s[0] < 0.0) {
      t.cls = TrajectoryClass::CrossesZero;
      return false;
    }
    if (s[1] > 0.0) {
      t.cls = TrajectoryClass::TurnsUpward;
      return false;
    }
    if (s[0] < decay_floor * a) return false;
    return true;
  };
  auto on_macro = [&](std::size_t, const State2& s) {
    if (record) t.nodes.push_back(s);
  };
  advance<2>(pb.plan, radial_rhs(pb.nl), y, 0, pb.plan.macro.size(), on_step, on_macro);
  return t;
}

struct Segments {
  std::vector<std::size_t> end;  // macro index at which each segment ends
};

Segments make_segments(const Plan& plan, double length) {
  Segments s;
  double start = plan.r_start;
  for (std::size_t j = 0; j < plan.macro.size(); ++j) {
    const bool last = j + 1 == plan.macro.size();
    if (last || plan.macro_r(j) - start >= length) {
      s.end.push_back(j);
      start = plan.macro_r(j);
    }
  }
  return s;
}

// Damped Newton on the multiple-shooting system. Unknowns are the amplitude
// followed by (u, v) at the start of every segment after the first.
struct Shooter {
  const Problem& pb;
  Segments seg;
  double robin = 0.0;

  std::size_t unknowns() const { return 1 + 2 * (seg.end.size() - 1); }
  std::size_t first_macro(std::size_t s) const { return s == 0 ? 0 : seg.end[s - 1] + 1; }

  // Returns the residual; fills the Jacobian when requested.
  Eigen::VectorXd residual(const Eigen::VectorXd& x, Eigen::MatrixXd* jac) const {
    const std::size_t K = seg.end.size();
    const std::size_t n = unknowns();
    Eigen::VectorXd F(n);
    if (jac) jac->setZero(n, n);
    auto rhs = variational_rhs(pb.nl);
    auto always = [](double, const State6&) { return true; };
    auto none = [](std::size_t, const State6&) {};
    for (std::size_t s = 0; s < K; ++s) {
      State6 y;
      if (s == 0) {
        const auto ts = pb.start.at(pb.nl, x[0], pb.plan.r_start);
        y = {ts.u, ts.v, ts.du_da, ts.dv_da, 0.0, 0.0};
      } else {
        y = {x[2 * s - 1], x[2 * s], 1.0, 0.0, 0.0, 1.0};
      }
      advance<6>(pb.plan, rhs, y, first_macro(s), seg.end[s] + 1, always, none);
      if (s + 1 < K) {
        const std::size_t row = 2 * s;
        F[row] = y[0] - x[2 * s + 1];
        F[row + 1] = y[1] - x[2 * s + 2];
        if (jac) {
          auto& J = *jac;
          if (s == 0) {
            J(row, 0) = y[2];
            J(row + 1, 0) = y[3];
          } else {
            J(row, 2 * s - 1) = y[2];
            J(row, 2 * s) = y[4];
            J(row + 1, 2 * s - 1) = y[3];
            J(row + 1, 2 * s) = y[5];
          }
          J(row, 2 * s + 1) = -1.0;
          J(row + 1, 2 * s + 2) = -1.0;
        }
      } else {
        const std::size_t row = n - 1;
        F[row] = y[1] + robin * y[0];
        if (jac) {
          auto& J = *jac;
          if (s == 0) {
            J(row, 0) = y[3] + robin * y[2];
          } else {
            J(row, 2 * s - 1) = y[3] + robin * y[2];
            J(row, 2 * s) = y[5] + robin * y[4];
          }
        }
      }
    }
    return F;
  }

  Eigen::VectorXd pack(double a, const std::vector<State2>& at_macro) const {
    Eigen::VectorXd x(unknowns());
    x[0] = a;
    for (std::size_t s = 1; s < seg.end.size(); ++s) {
      const State2& y = at_macro[seg.end[s - 1]];
      x[2 * s - 1] = y[0];
      x[2 * s] = y[1];
    }
    return x;
  }

  // Returns the number of iterations; throws ConvergenceFailure.
  int solve(Eigen::VectorXd& x) const {
    constexpr int max_iter = 60;
    Eigen::MatrixXd J;
    Eigen::VectorXd F = residual(x, &J);
    double norm = F.lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, std::abs(x[0]));
    int it = 0;
    for (; it < max_iter; ++it) {
      if (norm < 1e-14 * scale) break;
      const Eigen::VectorXd dx = J.partialPivLu().solve(-F);
      if (!dx.allFinite()) throw Error(ErrorCode::ConvergenceFailure, "singular shooting Jacobian");
      double lambda = 1.0;
      bool accepted = false;
      Eigen::VectorXd trial;
      Eigen::VectorXd Ft;
      for (int k = 0; k < 30; ++k) {
        trial = x + lambda * dx;
        Ft = residual(trial, nullptr);
        const double tn = Ft.lpNorm<Eigen::Infinity>();
        if (std::isfinite(tn) && tn < norm) {
          accepted = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!accepted) {
        if (norm < 1e-10 * scale) break;  // stalled at rounding level
        throw Error(ErrorCode::ConvergenceFailure,
                    "Newton iteration stalled with residual " + fmt_num(norm));
      }
      x = trial;
      F = residual(x, &J);
      const double step = lambda * dx.lpNorm<Eigen::Infinity>();
      norm = F.lpNorm<Eigen::Infinity>();
      if (step < 1e-15 * scale && norm < 1e-10 * scale) {
        ++it;
        break;
      }
    }
    if (it == max_iter && norm > 1e-10 * scale)
      throw Error(ErrorCode::ConvergenceFailure, "Newton iteration did not converge");
    return it;
  }

  // Integrates the converged solution and returns (u, v) at every macro node.
  std::vector<State2> trace(const Eigen::VectorXd& x) const {
    std::vector<State2> out(pb.plan.macro.size());
    auto rhs = radial_rhs(pb.nl);
    auto always = [](double, const State2&) { return true; };
    auto keep = [&](std::size_t j, const State2& y) { out[j] = y; };
    for (std::size_t s = 0; s < seg.end.size(); ++s) {
      State2 y;
      if (s == 0) {
        const auto ts = pb.start.at(pb.nl, x[0], pb.plan.r_start);
        y = {ts.u, ts.v};
      } else {
        y = {x[2 * s - 1], x[2 * s]};
      }
      advance<2>(pb.plan, rhs, y, first_macro(s), seg.end[s] + 1, always, keep);
    }
    return out;
  }
};

std::vector<State2> tail_guess(const Problem& pb, std::vector<State2> nodes) {
  const std::size_t total = pb.plan.macro.size();
  while (!nodes.empty() && !(nodes.back()[0] > 0.0 && nodes.back()[1] < 0.0)) nodes.pop_back();
  double c;
  std::size_t from = nodes.size();
  if (nodes.empty()) {
    c = 1.0;
  } else {
    const double r = pb.plan.macro_r(from - 1);
    c = nodes.back()[0] * r * std::exp(pb.k * r);
  }
  nodes.resize(total);
  for (std::size_t j = from; j < total; ++j) {
    const double r = pb.plan.macro_r(j);
    const double u = c * std::exp(-pb.k * r) / r;
    nodes[j] = {u, -u * (pb.k + 1.0 / r)};
  }
  return nodes;
}

struct Assembled {
  RadialProfile profile;
  double end_ratio = 0.0;
};

Assembled assemble(const Problem& pb, double param, const std::vector<State2>& macro_vals) {
  const double a = pb.start.amplitude(param);
  const Plan& plan = pb.plan;
  RadialProfile p;
  p.r.resize(plan.n + 1);
  p.u.assign(plan.n + 1, 0.0);
  p.du.assign(plan.n + 1, 0.0);
  for (std::size_t i = 0; i <= plan.n; ++i) p.r[i] = plan.r(i);
  std::size_t i = 0;
  for (; i <= plan.n && plan.r(i) <= plan.r_start; ++i) {
    const auto ts = pb.start.at(pb.nl, param, plan.r(i));
    p.u[i] = ts.u;
    p.du[i] = ts.v;
  }
  auto second = [&](double r, const State2& y) { return pb.nl.f(y[0]) - 2.0 * y[1] / r; };
  std::size_t prev_idx = 0;
  State2 prev{};
  double prev_r = plan.r_start;
  {
    const auto ts = pb.start.at(pb.nl, param, plan.r_start);
    prev = {ts.u, ts.v};
  }
  for (std::size_t j = 0; j < plan.macro.size(); ++j) {
    const std::size_t idx = plan.macro[j];
    const State2& y = macro_vals[j];
    const double r1 = plan.r(idx);
    const double s0 = second(prev_r, prev), s1 = second(r1, y);
    for (std::size_t q = std::max(prev_idx + 1, i); q < idx; ++q) {
      const double r = plan.r(q);
      p.u[q] = hermite(prev_r, r1, prev[0], y[0], prev[1], y[1], r);
      p.du[q] = hermite(prev_r, r1, prev[1], y[1], s0, s1, r);
    }
    p.u[idx] = y[0];
    p.du[idx] = y[1];
    prev_idx = idx;
    prev = y;
    prev_r = r1;
  }
  p.amplitude = a;
  p.du[0] = 0.0;
  Assembled out{std::move(p), 0.0};
  out.end_ratio = out.profile.u.back() / a;
  return out;
}

void check_shape(const RadialProfile& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p.u[i] > 0.0))
      throw Error(ErrorCode::ConvergenceFailure,
                  "profile is not positive at r = " + fmt_num(p.r[i]));
    if (i > 0 && !(p.du[i] < 0.0))
      throw Error(ErrorCode::ConvergenceFailure,
                  "profile is not decreasing at r = " + fmt_num(p.r[i]));
  }
}

void fit_tail(RadialProfile& p, double k, const ShootingConfig& cfg, SolverInfo& info) {
  std::vector<std::size_t> idx;
  if (cfg.matching_window) {
    for (std::size_t i = 1; i < p.size(); ++i)
      if (p.r[i] >= cfg.matching_window->first && p.r[i] <= cfg.matching_window->second) idx.push_back(i);
  } else {
    for (std::size_t i = 1; i < p.size(); ++i) {
      const double rel = p.u[i] / p.amplitude;
      if (rel >= 1e-9 && rel <= 1e-5) idx.push_back(i);
    }
    if (idx.size() < 10) {
      idx.clear();
      for (std::size_t i = p.size() * 9 / 10; i < p.size(); ++i) idx.push_back(i);
    }
  }
  if (idx.empty()) throw Error(ErrorCode::InvalidArgument, "matching window contains no grid nodes");
  // Least-squares constant for c in u = c exp(-k r)/r is the mean of u r exp(k r).
  double sum = 0.0;
  for (auto i : idx) sum += p.u[i] * p.r[i] * std::exp(k * p.r[i]);
  const double c = sum / static_cast<double>(idx.size());
  double worst = 0.0;
  for (auto i : idx) worst = std::max(worst, std::abs(p.u[i] * p.r[i] * std::exp(k * p.r[i]) - c) / c);
  p.tail_constant = c;
  p.decay_rate = k;
  info.tail_mismatch = worst;
  info.matching_window = {p.r[idx.front()], p.r[idx.back()]};
}

struct Guess {
  double param = 0.0;
  std::vector<State2> nodes;
};

// Bisection on the start parameter between two trajectories of different
// class. Stops at the tolerance or at the first undetermined midpoint.
std::optional<Guess> bisect(const Problem& pb, double lo, double hi, double tol, double decay_floor,
                            bool in_log, int* steps, TrajectoryClass* lo_out, TrajectoryClass* hi_out) {
  auto param = [&](double t) { return in_log ? std::exp(t) : t; };
  const auto lo_cls = shoot(pb, param(lo), decay_floor, false).cls;
  const auto hi_cls = shoot(pb, param(hi), decay_floor, false).cls;
  if (lo_out) *lo_out = lo_cls;
  if (hi_out) *hi_out = hi_cls;
  if (lo_cls == hi_cls || lo_cls == TrajectoryClass::Undetermined || hi_cls == TrajectoryClass::Undetermined)
    return std::nullopt;
  *steps = 0;
  double best = 0.5 * (lo + hi);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++*steps;
    const auto c = shoot(pb, param(mid), decay_floor, false).cls;
    best = mid;
    if (c == TrajectoryClass::Undetermined) break;
    (c == lo_cls ? lo : hi) = mid;
    best = 0.5 * (lo + hi);
  }
  Guess g;
  g.param = param(best);
  g.nodes = tail_guess(pb, shoot(pb, g.param, decay_floor, true).nodes);
  return g;
}

// Places the plateau start inside the flat top and moves it until the two
// trial deviations separate: s = 1e-2 leaves the plateau too early (turns
// upward), s = 1e-14 leaves late enough to cross. Smaller deviations are not
// meaningful because rounding decides on which side the trajectory departs.
std::optional<Guess> plateau_guess(Problem& pb, double front, const ShootingConfig& cfg, int* steps) {
  const double h = pb.plan.h;
  const std::size_t n = pb.plan.n;
  const double kappa = std::sqrt(pb.nl.df(pb.nl.plateau_level()));
  double r0 = std::max(1.0, 0.5 * front);
  for (int attempt = 0; attempt < 12; ++attempt) {
    r0 = std::min(h * std::round(r0 / h), h * static_cast<double>(n / 2));
    pb.start = Start{true, pb.nl.plateau_level(), kappa, r0};
    pb.plan = make_plan(h, n, r0, cfg.ode_tolerance);
    TrajectoryClass lo_cls{}, hi_cls{};
    // A deep decay floor keeps the bisection going until the front is resolved.
    auto g = bisect(pb, std::log(1e-14), std::log(1e-2), 1e-13, std::min(cfg.decay_floor, 1e-12), true, steps,
                    &lo_cls, &hi_cls);
    if (!g) {
      if (lo_cls == TrajectoryClass::TurnsUpward && hi_cls == TrajectoryClass::TurnsUpward) {
        r0 += 10.0 / kappa;
      } else if (lo_cls == TrajectoryClass::CrossesZero && hi_cls == TrajectoryClass::CrossesZero && r0 > 1.0) {
        r0 = std::max(1.0, r0 - 10.0 / kappa);
      } else {
        return std::nullopt;
      }
      continue;
    }
    if (g->param < 1e-10) {
      r0 += std::log(1e-8 / g->param) / kappa;
      continue;
    }
    if (g->param > 1e-6 && r0 > 1.0 && attempt < 11) {
      r0 = std::max(1.0, r0 - std::log(g->param / 1e-8) / kappa);
      continue;
    }
    return g;
  }
  return std::nullopt;
}

RadialProfile solve_radial(const Nonlinearity& nl, const ShootingConfig& cfg, ProfileKind kind) {
  cfg.validate();
  const double omega = nl.omega;
  const double k = std::sqrt(omega);
  const double h = cfg.grid_spacing.value_or(default_grid_spacing(omega));
  double L = cfg.max_radius.value_or(default_max_radius(omega));
  SolverInfo info;

  std::optional<double> front;
  if (nl.quintic > 0.0) {
    const double est = plateau_radius_estimate(nl);
    if (est > 10.0 / k) front = est;
  }
  while (front && *front + 30.0 / k > L && info.domain_doublings < cfg.max_domain_doublings) {
    L *= 2.0;
    ++info.domain_doublings;
  }

  while (true) {
    const auto n = static_cast<std::size_t>(std::ceil(L / h - 1e-9));
    Problem pb{nl, k, make_plan(h, n, cfg.taylor_start_step, cfg.ode_tolerance), Start{}};
    ShootingConfig run_cfg = cfg;
    run_cfg.max_radius = pb.plan.r(n);

    const auto bracket = cfg.amplitude_bracket.value_or(default_amplitude_bracket(nl));
    info.bracket_lo = bracket.first;
    info.bracket_hi = bracket.second;
    TrajectoryClass lo_cls{}, hi_cls{};
    auto guess = bisect(pb, bracket.first, bracket.second, cfg.bisection_tolerance, cfg.decay_floor, false,
                        &info.bisection_steps, &lo_cls, &hi_cls);
    info.initial_guess = "bisection";
    if (!guess && !cfg.amplitude_bracket && front) {
      guess = plateau_guess(pb, *front, cfg, &info.bisection_steps);
      info.initial_guess = "plateau_start";
    }
    if (!guess)
      throw Error(ErrorCode::BracketFailure,
                  "amplitude bracket [" + fmt_num(bracket.first) + ", " + fmt_num(bracket.second) +
                      "] does not separate crossing from turning trajectories (" + std::string(to_string(lo_cls)) +
                      " / " + std::string(to_string(hi_cls)) + ")");

    Shooter sh{pb, make_segments(pb.plan, cfg.segment_length), k + 1.0 / pb.plan.r(n)};
    Eigen::VectorXd x = sh.pack(guess->param, guess->nodes);
    info.newton_iterations = sh.solve(x);
    auto as = assemble(pb, x[0], sh.trace(x));

    if (!(std::abs(as.end_ratio) < cfg.tail_threshold)) {
      if (info.domain_doublings < cfg.max_domain_doublings) {
        L *= 2.0;
        ++info.domain_doublings;
        continue;
      }
      throw Error(ErrorCode::DomainTooSmall,
                  "u(max_radius)/u(0) = " + fmt_num(as.end_ratio) + " exceeds tail threshold at r = " +
                      fmt_num(pb.plan.r(n)));
    }

    RadialProfile p = std::move(as.profile);
    check_shape(p);
    p.kind = kind;
    p.quintic = nl.quintic;
    if (kind == ProfileKind::ground_state) p.omega = Frequency(omega);
    p.truncation_radius = p.r.back();
    fit_tail(p, k, run_cfg, info);
    p.info = info;

    const auto rep = evaluate(p);
    const double worst = std::max(std::abs(rep.nehari_residual), std::abs(rep.pohozaev_residual));
    if (!(worst < cfg.residual_gate))
      throw Error(ErrorCode::ResidualGate, "Nehari residual " + fmt_num(rep.nehari_residual) +
                                               " / Pohozaev residual " + fmt_num(rep.pohozaev_residual) +
                                               " exceed gate " + fmt_num(cfg.residual_gate));
    return p;
  }
}

Problem classification_problem(const Nonlinearity& nl, const ShootingConfig& cfg) {
  const double k = std::sqrt(nl.omega);
  const double h = cfg.grid_spacing.value_or(default_grid_spacing(nl.omega));
  const double L = cfg.max_radius.value_or(default_max_radius(nl.omega));
  const auto n = static_cast<std::size_t>(std::ceil(L / h - 1e-9));
  return Problem{nl, k, make_plan(h, n, cfg.taylor_start_step, cfg.ode_tolerance), Start{}};
}

void require_window(Frequency omega) {
  if (!omega.in_window())
    throw Error(ErrorCode::FrequencyOutOfWindow,
                "omega = " + fmt_num(omega.value()) +
                    " is outside (0, 3/16); no positive ground state exists there");
}

}  // namespace

TrajectoryClass classify_trajectory(double amplitude, const Nonlinearity& nl, const ShootingConfig& cfg) {
  cfg.validate();
  if (!(amplitude > 0.0)) throw Error(ErrorCode::InvalidArgument, "amplitude must be positive");
  return shoot(classification_problem(nl, cfg), amplitude, cfg.decay_floor, false).cls;
}

TrajectoryClass classify_trajectory(double amplitude, Frequency omega, const ShootingConfig& cfg) {
  require_window(omega);
  return classify_trajectory(amplitude, Nonlinearity{omega.value(), 1.0}, cfg);
}

RadialProfile solve_ground_state(Frequency omega, const ShootingConfig& cfg) {
  require_window(omega);
  return solve_radial(Nonlinearity{omega.value(), 1.0}, cfg, ProfileKind::ground_state);
}

RadialProfile solve_cubic_reference(const ShootingConfig& cfg) {
  return solve_radial(Nonlinearity{1.0, 0.0}, cfg, ProfileKind::cubic_reference);
}

double cubic_reference_mass() {
  static std::once_flag once;
  static double mass = 0.0;
  std::call_once(once, [] { mass = evaluate(solve_cubic_reference()).mass; });
  return mass;
}

}  // namespace cqnls
