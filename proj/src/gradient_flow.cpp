#include "cqnls/gradient_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cqnls/errors.hpp"
#include "cqnls/functionals.hpp"
#include "cqnls/quadrature.hpp"
#include "cqnls/tridiagonal.hpp"

namespace cqnls {

RadialProfile profile_from_w(const std::vector<double>& w, double h) {
  const std::size_t n = w.size() - 1;
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "grid too small");
  // w is odd in r, so w(-r) = -w(r) extends the stencil past the origin.
  auto at = [&](long i) -> double {
    if (i < 0) return -w[static_cast<std::size_t>(-i)];
    if (i > static_cast<long>(n)) return 0.0;
    return w[static_cast<std::size_t>(i)];
  };
  std::vector<double> dw(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const long k = static_cast<long>(i);
    if (i + 2 <= n) {
      dw[i] = (-at(k + 2) + 8.0 * at(k + 1) - 8.0 * at(k - 1) + at(k - 2)) / (12.0 * h);
    } else {
      dw[i] = (3.0 * at(k) - 4.0 * at(k - 1) + at(k - 2)) / (2.0 * h);
    }
  }
  RadialProfile p;
  p.kind = ProfileKind::test_function;
  p.r.resize(n + 1);
  p.u.resize(n + 1);
  p.du.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double r = h * static_cast<double>(i);
    p.r[i] = r;
    if (i == 0) {
      p.u[i] = dw[0];
      p.du[i] = 0.0;
    } else {
      p.u[i] = w[i] / r;
      p.du[i] = (dw[i] - p.u[i]) / r;
    }
  }
  p.amplitude = p.u[0];
  p.truncation_radius = p.r.back();
  return p;
}

namespace {

struct Grid {
  double h;
  std::size_t n;  // intervals; unknowns are w[1..n-1]
  std::vector<double> weights;
};

Grid make_grid(const FlowConfig& cfg) {
  if (!(cfg.radius > 0.0 && cfg.spacing > 0.0 && cfg.time_step > 0.0 && cfg.tolerance > 0.0))
    throw Error(ErrorCode::InvalidArgument, "flow configuration must be positive");
  const auto n = static_cast<std::size_t>(std::ceil(cfg.radius / cfg.spacing - 1e-9));
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "flow grid too small");
  return {cfg.spacing, n, simpson_weights(n, cfg.spacing)};
}

constexpr double kFourPi = 4.0 * std::numbers::pi;

double mass_of(const Grid& g, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i <= g.n; ++i) s += g.weights[i] * w[i] * w[i];
  return kFourPi * s;
}

// Numerov mass operator B = tridiag(1, 10, 1)/12 applied to interior values.
std::vector<double> apply_b(const std::vector<double>& x) {
  const std::size_t n = x.size() - 1;
  std::vector<double> y(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) y[i] = (x[i - 1] + 10.0 * x[i] + x[i + 1]) / 12.0;
  return y;
}

std::vector<double> apply_t(const std::vector<double>& x, double h) {
  const std::size_t n = x.size() - 1;
  std::vector<double> y(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) y[i] = (2.0 * x[i] - x[i - 1] - x[i + 1]) / (h * h);
  return y;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// N(u) = u^2 - q u^4 with u = w/r.
std::vector<double> potential(const Grid& g, const std::vector<double>& w, double q) {
  std::vector<double> N(g.n + 1, 0.0);
  for (std::size_t i = 1; i < g.n; ++i) {
    const double u = w[i] / (g.h * static_cast<double>(i));
    const double u2 = u * u;
    N[i] = u2 - q * u2 * u2;
  }
  return N;
}

// One semi-implicit step: ((1/tau + s + shift) B + T) w* = B ((1/tau + s + N - lag) w).
// Solutions of T w - B N w + omega B w = 0 are fixed points when either
// shift = omega (fixed frequency) or lag = omega (current multiplier).
std::vector<double> step(const Grid& g, const std::vector<double>& w, const std::vector<double>& N,
                         double tau, double shift, double lag) {
  double s = 0.0;
  for (double v : N) s = std::max(s, v);
  const double c = 1.0 / tau + s;
  const std::size_t m = g.n - 1;
  const double h2 = g.h * g.h;
  std::vector<double> sub(m), diag(m), sup(m), rhs(m);
  std::vector<double> src(g.n + 1, 0.0);
  for (std::size_t i = 1; i < g.n; ++i) src[i] = (c + N[i] - lag) * w[i];
  const auto bsrc = apply_b(src);
  for (std::size_t k = 0; k < m; ++k) {
    diag[k] = 10.0 / 12.0 * (c + shift) + 2.0 / h2;
    sub[k] = sup[k] = 1.0 / 12.0 * (c + shift) - 1.0 / h2;
    rhs[k] = bsrc[k + 1];
  }
  const auto x = solve_tridiagonal<double>(sub, diag, sup, rhs);
  std::vector<double> out(g.n + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) out[k + 1] = x[k];
  return out;
}

// Relative residual of T w - B N w + omega B w = 0.
double residual_norm(const Grid& g, const std::vector<double>& w, const std::vector<double>& N, double omega) {
  std::vector<double> nw(g.n + 1, 0.0);
  for (std::size_t i = 0; i <= g.n; ++i) nw[i] = N[i] * w[i];
  const auto tw = apply_t(w, g.h);
  const auto bnw = apply_b(nw);
  const auto bw = apply_b(w);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i < g.n; ++i) {
    const double r = tw[i] - bnw[i] + omega * bw[i];
    num += r * r;
    den += bw[i] * bw[i];
  }
  return std::sqrt(num / den);
}

// Frequency implied by the discrete Nehari relation for the current iterate.
double multiplier(const Grid& g, const std::vector<double>& w, const std::vector<double>& N) {
  std::vector<double> nw(g.n + 1, 0.0);
  for (std::size_t i = 0; i <= g.n; ++i) nw[i] = N[i] * w[i];
  return (dot(w, apply_b(nw)) - dot(w, apply_t(w, g.h))) / dot(w, apply_b(w));
}

void check_finite(const std::vector<double>& w, int iteration) {
  for (double v : w)
    if (!std::isfinite(v))
      throw Error(ErrorCode::FlowDiverged, "non-finite iterate at step " + std::to_string(iteration));
}

std::vector<double> sample_seed(const Grid& g, const RadialSeed& seed) {
  std::vector<double> w(g.n + 1, 0.0);
  for (std::size_t i = 1; i < g.n; ++i) {
    const double r = g.h * static_cast<double>(i);
    w[i] = r * seed(r);
  }
  return w;
}

FlowResult finish(const Grid& g, const std::vector<double>& w, double frequency, double gnorm, int it) {
  FlowResult res;
  res.profile = profile_from_w(w, g.h);
  const auto rep = evaluate(res.profile);
  res.frequency = frequency;
  res.energy = rep.energy;
  res.mass = rep.mass;
  res.gradient_norm = gnorm;
  res.iterations = it;
  return res;
}

}  // namespace

FlowResult mass_projected_flow(double mass, const RadialSeed& seed, const FlowConfig& cfg) {
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidArgument, "mass must be positive");
  const Grid g = make_grid(cfg);
  auto w = sample_seed(g, seed);
  auto normalize = [&](std::vector<double>& x) {
    const double m = mass_of(g, x);
    if (!(m > 0.0) || !std::isfinite(m)) throw Error(ErrorCode::FlowDiverged, "seed has no mass");
    const double s = std::sqrt(mass / m);
    for (double& v : x) v *= s;
  };
  normalize(w);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const auto N = potential(g, w, 1.0);
    const double mu = multiplier(g, w, N);
    const double gnorm = residual_norm(g, w, N, mu);
    if (gnorm < cfg.tolerance) return finish(g, w, mu, gnorm, it);
    w = step(g, w, N, cfg.time_step, 0.0, mu);
    check_finite(w, it);
    normalize(w);
  }
  throw Error(ErrorCode::FlowDiverged, "mass-projected flow did not settle within the iteration budget");
}

FlowResult nehari_projected_flow(double omega, double quintic, const RadialSeed& seed, const FlowConfig& cfg) {
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega must be positive");
  const Grid g = make_grid(cfg);
  auto w = sample_seed(g, seed);
  auto project = [&](std::vector<double>& x) {
    std::vector<double> u2w(g.n + 1, 0.0), u4w(g.n + 1, 0.0);
    for (std::size_t i = 1; i < g.n; ++i) {
      const double u = x[i] / (g.h * static_cast<double>(i));
      u2w[i] = u * u * x[i];
      u4w[i] = u * u * u * u * x[i];
    }
    const double lin = dot(x, apply_t(x, g.h)) + omega * dot(x, apply_b(x));
    const double d4 = dot(x, apply_b(u2w));
    const double d6 = quintic * dot(x, apply_b(u4w));
    double t2;
    if (d6 <= 0.0) {
      t2 = lin / d4;
    } else {
      const double disc = d4 * d4 - 4.0 * d6 * lin;
      if (disc <= 0.0) {
        t2 = d4 / (2.0 * d6);
      } else {
        const double a = (d4 - std::sqrt(disc)) / (2.0 * d6);
        const double b = (d4 + std::sqrt(disc)) / (2.0 * d6);
        t2 = std::abs(a - 1.0) < std::abs(b - 1.0) ? a : b;
      }
    }
    if (!(t2 > 0.0) || !std::isfinite(t2)) throw Error(ErrorCode::FlowDiverged, "Nehari projection failed");
    const double t = std::sqrt(t2);
    for (double& v : x) v *= t;
  };
  project(w);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const auto N = potential(g, w, quintic);
    const double gnorm = residual_norm(g, w, N, omega);
    if (gnorm < cfg.tolerance) return finish(g, w, omega, gnorm, it);
    w = step(g, w, N, cfg.time_step, omega, 0.0);
    check_finite(w, it);
    project(w);
  }
  throw Error(ErrorCode::FlowDiverged, "Nehari-projected flow did not settle within the iteration budget");
}

}  // namespace cqnls
