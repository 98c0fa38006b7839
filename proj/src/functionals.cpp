#include "cqnls/functionals.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cqnls/errors.hpp"
#include "cqnls/quadrature.hpp"

namespace cqnls {

namespace {

struct Moments {
  double mass, grad, l4, l6;
};

// Integrals of powers of c exp(-k r)/r over [L, inf) against r^2 dr.
Moments tail_moments(double c, double k, double L) {
  if (c == 0.0 || k <= 0.0) return {0, 0, 0, 0};
  using boost::math::expint;
  const double e2 = std::exp(-2.0 * k * L);
  const double c2 = c * c;
  return {c2 * e2 / (2.0 * k), c2 * (0.5 * k * e2 + e2 / L), c2 * c2 * expint(2, 4.0 * k * L) / L,
          c2 * c2 * c2 * expint(4, 6.0 * k * L) / (L * L * L)};
}

}  // namespace

FunctionalReport evaluate(const RadialProfile& p) {
  if (p.size() < 3) throw Error(ErrorCode::InvalidArgument, "profile has fewer than three samples");
  const std::size_t n = p.size();
  std::vector<double> u2(n), g2(n), u4(n), u6(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = p.u[i], d = p.du[i];
    if (!std::isfinite(u) || !std::isfinite(d) || !std::isfinite(p.r[i]))
      throw Error(ErrorCode::NonFiniteIntegrand, "non-finite sample at index " + std::to_string(i));
    const double s = u * u;
    u2[i] = s;
    g2[i] = d * d;
    u4[i] = s * s;
    u6[i] = s * s * s;
  }
  const double h = p.spacing();
  const double r0 = p.r.front();
  const Moments tail = tail_moments(p.tail_constant, p.decay_rate, p.r.back());
  constexpr double four_pi = 4.0 * std::numbers::pi;

  FunctionalReport rep;
  rep.mass = four_pi * (radial_integral(u2, r0, h, 3) + tail.mass);
  rep.grad_sq = four_pi * (radial_integral(g2, r0, h, 3) + tail.grad);
  rep.l4 = four_pi * (radial_integral(u4, r0, h, 3) + tail.l4);
  rep.l6 = four_pi * (radial_integral(u6, r0, h, 3) + tail.l6);
  if (!std::isfinite(rep.mass + rep.grad_sq + rep.l4 + rep.l6))
    throw Error(ErrorCode::NonFiniteIntegrand, "integral overflow");
  rep.energy = 0.5 * rep.grad_sq - 0.25 * rep.l4 + rep.l6 / 6.0;
  rep.pohozaev = rep.grad_sq + rep.l6 - 0.75 * rep.l4;
  rep.beta = rep.l6 / rep.grad_sq;

  double omega = std::numeric_limits<double>::quiet_NaN();
  if (p.kind == ProfileKind::ground_state && p.omega) omega = p.omega->value();
  if (p.kind == ProfileKind::cubic_reference) omega = 1.0;
  const double q = p.quintic;
  rep.nehari_residual = (rep.grad_sq + omega * rep.mass + q * rep.l6 - rep.l4) / rep.grad_sq;
  rep.pohozaev_residual = (rep.grad_sq / 3.0 + q * rep.l6 / 3.0 - 0.25 * rep.l4) / rep.grad_sq;
  if (std::isnan(omega)) rep.pohozaev_residual = omega;
  return rep;
}

double f_alpha(const FunctionalReport& rep, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (!(rep.mass > 0.0 && rep.l4 > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero profile");
  const double s = 1.0 + alpha;
  return std::sqrt(rep.mass) * std::pow(rep.l6, alpha / (2.0 * s)) *
         std::pow(rep.grad_sq, 1.5 / s) / rep.l4;
}

double f_alpha(const RadialProfile& profile, double alpha) { return f_alpha(evaluate(profile), alpha); }

double d_scalar(const RadialProfile& p) {
  if (p.kind != ProfileKind::ground_state || !p.omega)
    throw Error(ErrorCode::KindMismatch, "d(omega) is defined for ground states only");
  const auto rep = evaluate(p);
  return rep.energy + 0.5 * p.omega->value() * rep.mass;
}

}  // namespace cqnls
