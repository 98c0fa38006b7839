#include "cqnls/radial_ode.hpp"

#include <algorithm>
#include <cmath>

namespace cqnls {

double Nonlinearity::plateau_level() const {
  const double disc = std::max(0.0, 1.0 - 4.0 * omega * quintic);
  return std::sqrt((1.0 + std::sqrt(disc)) / (2.0 * quintic));
}

double Nonlinearity::potential_root() const {
  const double disc = std::max(0.0, 1.0 - 16.0 * omega * quintic / 3.0);
  return std::sqrt(0.75 * (1.0 + std::sqrt(disc)) / quintic);
}

TaylorStart taylor_start(const Nonlinearity& nl, double a, double r) {
  const double f0 = nl.f(a), f1 = nl.df(a), f2 = nl.d2f(a), f3 = nl.d3f(a);
  const double c2 = f0 / 6.0;
  const double c4 = f1 * c2 / 20.0;
  const double c6 = (f1 * c4 + 0.5 * f2 * c2 * c2) / 42.0;
  const double d2 = f1 / 6.0;
  const double d4 = (f2 * c2 + f1 * d2) / 20.0;
  const double d6 = (f2 * c4 + f1 * d4 + 0.5 * f3 * c2 * c2 + f2 * c2 * d2) / 42.0;
  const double r2 = r * r, r4 = r2 * r2, r6 = r4 * r2;
  return {a + c2 * r2 + c4 * r4 + c6 * r6, 2 * c2 * r + 4 * c4 * r2 * r + 6 * c6 * r4 * r,
          1.0 + d2 * r2 + d4 * r4 + d6 * r6, 2 * d2 * r + 4 * d4 * r2 * r + 6 * d6 * r4 * r};
}

double step_for_tolerance(double ode_tolerance) {
  return std::min(0.5, std::pow(ode_tolerance, 0.2));
}

}  // namespace cqnls
