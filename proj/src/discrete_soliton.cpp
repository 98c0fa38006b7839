#include "cqnls/discrete_soliton.hpp"

#include <algorithm>
#include <cmath>

#include "cqnls/errors.hpp"
#include "cqnls/tridiagonal.hpp"

namespace cqnls {

namespace {

double residual_max(const std::vector<double>& w, double omega, double dr, std::vector<double>* F) {
  const std::size_t n = w.size() - 1;
  double worst = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double r = dr * static_cast<double>(i);
    const double rho = w[i] * w[i] / (r * r);
    const double f = (w[i - 1] - 2.0 * w[i] + w[i + 1]) / (dr * dr) + (focusing(rho) - omega) * w[i];
    if (F) (*F)[i] = f;
    worst = std::max(worst, std::abs(f));
  }
  return worst;
}

}  // namespace

DiscreteSoliton discrete_ground_state(const RadialProfile& ground, double dr, double radius) {
  if (ground.kind != ProfileKind::ground_state || !ground.omega)
    throw Error(ErrorCode::KindMismatch, "discrete_ground_state needs a ground state");
  if (!(dr > 0.0)) throw Error(ErrorCode::InvalidArgument, "dr must be positive");
  if (radius <= 0.0) radius = 2.0 * ground.truncation_radius;
  const double omega = ground.omega->value();
  const auto n = static_cast<std::size_t>(std::ceil(radius / dr - 1e-9));
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "discrete grid too small");

  DiscreteSoliton s;
  s.omega = omega;
  s.dr = dr;
  s.w.assign(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double r = dr * static_cast<double>(i);
    s.w[i] = r * ground.at(r).first;
  }
  double wmax = 0.0;
  for (double v : s.w) wmax = std::max(wmax, std::abs(v));

  std::vector<double> F(n + 1, 0.0);
  double res = residual_max(s.w, omega, dr, &F);
  const std::size_t m = n - 1;
  std::vector<double> sub(m, 1.0 / (dr * dr)), sup(m, 1.0 / (dr * dr)), diag(m), rhs(m);
  int it = 0;
  for (; it < 50 && res > 1e-14 * wmax; ++it) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = k + 1;
      const double r = dr * static_cast<double>(i);
      const double rho = s.w[i] * s.w[i] / (r * r);
      diag[k] = -2.0 / (dr * dr) + 3.0 * rho - 5.0 * rho * rho - omega;
      rhs[k] = -F[i];
    }
    const auto dx = solve_tridiagonal<double>(sub, diag, sup, rhs);
    for (std::size_t k = 0; k < m; ++k) s.w[k + 1] += dx[k];
    const double next = residual_max(s.w, omega, dr, &F);
    if (!(next < res) && next > 1e-12 * wmax) {
      res = next;
      ++it;
      break;
    }
    res = next;
  }
  s.residual = res / wmax;
  s.newton_iterations = it;
  if (!(s.residual < 1e-10))
    throw Error(ErrorCode::ConvergenceFailure, "discrete ground state residual " + fmt_num(s.residual));
  for (std::size_t i = 1; i < n; ++i)
    if (!(s.w[i] > 0.0))
      throw Error(ErrorCode::ConvergenceFailure, "discrete ground state is not positive");
  return s;
}

}  // namespace cqnls
