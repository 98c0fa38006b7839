#include "cqnls/oracles.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cqnls/errors.hpp"
#include "cqnls/profile.hpp"
#include "cqnls/quadrature.hpp"

namespace cqnls {

namespace {

void require_window(double omega) {
  if (!(omega > 0.0 && omega < kOmegaMax))
    throw Error(ErrorCode::FrequencyOutOfWindow, "omega = " + fmt_num(omega) + " is outside (0, 3/16)");
}

}  // namespace

double soliton_1d(double omega, double x) {
  require_window(omega);
  const double k = 2.0 * std::sqrt(omega);
  return 2.0 * std::sqrt(omega / (1.0 + std::sqrt(1.0 - 16.0 * omega / 3.0) * std::cosh(k * x)));
}

double soliton_1d_derivative(double omega, double x) {
  require_window(omega);
  const double k = 2.0 * std::sqrt(omega);
  const double s = std::sqrt(1.0 - 16.0 * omega / 3.0);
  // phi' = -(s k / 2) sinh / (1 + s cosh) phi, written to stay finite when cosh overflows.
  const double c = std::cosh(k * x);
  return -0.5 * s * k * std::tanh(k * x) / (1.0 / c + s) * soliton_1d(omega, x);
}

Quadrature1dReport validate_quadrature_1d(double omega, double spacing) {
  require_window(omega);
  Quadrature1dReport rep;
  rep.omega = omega;
  rep.spacing = spacing;
  // phi ~ exp(-sqrt(omega) x): the integrands are below 1e-30 relative beyond L.
  const double L = 70.0 / std::sqrt(omega);
  const auto n = static_cast<std::size_t>(std::ceil(L / spacing));
  rep.length = spacing * static_cast<double>(n);
  std::vector<double> u2(n + 1), g2(n + 1), u4(n + 1), u6(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = spacing * static_cast<double>(i);
    const double u = soliton_1d(omega, x), du = soliton_1d_derivative(omega, x);
    u2[i] = u * u;
    g2[i] = du * du;
    u4[i] = u2[i] * u2[i];
    u6[i] = u4[i] * u2[i];
  }
  // Even integrands: twice the half-line integral.
  rep.mass = 2.0 * radial_integral(u2, 0.0, spacing, 1);
  rep.grad_sq = 2.0 * radial_integral(g2, 0.0, spacing, 1);
  rep.l4 = 2.0 * radial_integral(u4, 0.0, spacing, 1);
  rep.l6 = 2.0 * radial_integral(u6, 0.0, spacing, 1);

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double inf = std::numeric_limits<double>::infinity();
  auto ref = [&](auto f) { return 2.0 * GK::integrate(f, 0.0, inf, 20, 1e-15); };
  rep.mass_reference = ref([&](double x) { return std::pow(soliton_1d(omega, x), 2); });
  rep.grad_sq_reference = ref([&](double x) { return std::pow(soliton_1d_derivative(omega, x), 2); });
  rep.l4_reference = ref([&](double x) { return std::pow(soliton_1d(omega, x), 4); });
  rep.l6_reference = ref([&](double x) { return std::pow(soliton_1d(omega, x), 6); });

  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  rep.max_relative_error = 0.0;
  for (double e : {rel(rep.mass, rep.mass_reference), rel(rep.grad_sq, rep.grad_sq_reference),
                   rel(rep.l4, rep.l4_reference), rel(rep.l6, rep.l6_reference)})
    rep.max_relative_error = std::isnan(e) ? e : std::max(rep.max_relative_error, e);
  rep.nehari_residual = (rep.grad_sq + omega * rep.mass + rep.l6 - rep.l4) / rep.grad_sq;
  return rep;
}

}  // namespace cqnls
