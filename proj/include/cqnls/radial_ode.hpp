#pragma once

#include <array>
#include <cstddef>

namespace cqnls {

/// Nonlinearity of the radial ground-state equation
///   u'' + (2/r) u' = f(u),   f(u) = omega u - u^3 + quintic u^5.
/// quintic = 1 is the cubic-quintic problem, quintic = 0 with omega = 1 the
/// cubic reference problem.
struct Nonlinearity {
  double omega = 0.0;
  double quintic = 1.0;

  double f(double u) const {
    const double u2 = u * u;
    return u * (omega - u2 + quintic * u2 * u2);
  }
  double df(double u) const {
    const double u2 = u * u;
    return omega - 3.0 * u2 + 5.0 * quintic * u2 * u2;
  }
  double d2f(double u) const { return u * (-6.0 + 20.0 * quintic * u * u); }
  double d3f(double u) const { return -6.0 + 60.0 * quintic * u * u; }

  /// Phase-plane potential F(a) = -omega a^2/2 + a^4/4 - quintic a^6/6.
  /// H = u'^2/2 + F(u) is non-increasing along radial trajectories.
  double potential(double a) const {
    const double a2 = a * a;
    return a2 * (-0.5 * omega + 0.25 * a2 - quintic * a2 * a2 / 6.0);
  }

  /// Largest positive zero of f (the plateau level); requires quintic > 0.
  double plateau_level() const;
  /// Largest positive root of the potential F; requires quintic > 0.
  double potential_root() const;
};

/// Series start u(r) = a + c2 r^2 + c4 r^4 + c6 r^6 and its sensitivity to a.
struct TaylorStart {
  double u;
  double v;
  double du_da;
  double dv_da;
};

TaylorStart taylor_start(const Nonlinearity& nl, double amplitude, double r);

/// Integrator step length for a given tolerance; independent of the frequency
/// so that solutions vary smoothly with omega.
double step_for_tolerance(double ode_tolerance);

/// One Dormand-Prince 5th-order step of y' = rhs(r, y).
template <std::size_t N, class Rhs>
void dopri5_step(Rhs&& rhs, double r, double h, std::array<double, N>& y) {
  using S = std::array<double, N>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;

  S k1, k2, k3, k4, k5, k6, t;
  rhs(r, y, k1);
  for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * a21 * k1[i];
  rhs(r + c2 * h, t, k2);
  for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  rhs(r + c3 * h, t, k3);
  for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  rhs(r + c4 * h, t, k4);
  for (std::size_t i = 0; i < N; ++i)
    t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  rhs(r + c5 * h, t, k5);
  for (std::size_t i = 0; i < N; ++i)
    t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  rhs(r + h, t, k6);
  for (std::size_t i = 0; i < N; ++i)
    y[i] += h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
}

/// (u, v) right-hand side of the radial equation.
inline auto radial_rhs(const Nonlinearity& nl) {
  return [&nl](double r, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    dy[0] = y[1];
    dy[1] = nl.f(y[0]) - 2.0 * y[1] / r;
  };
}

/// Radial equation augmented with its 2x2 variational system, stored as
/// (u, v, U1, V1, U2, V2).
inline auto variational_rhs(const Nonlinearity& nl) {
  return [&nl](double r, const std::array<double, 6>& y, std::array<double, 6>& dy) {
    const double fp = nl.df(y[0]);
    const double k = 2.0 / r;
    dy[0] = y[1];
    dy[1] = nl.f(y[0]) - k * y[1];
    dy[2] = y[3];
    dy[3] = fp * y[2] - k * y[3];
    dy[4] = y[5];
    dy[5] = fp * y[4] - k * y[5];
  };
}

/// Cubic Hermite interpolation on [x0, x1] from values and slopes.
inline double hermite(double x0, double x1, double y0, double y1, double s0, double s1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * s0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * s1;
}

}  // namespace cqnls
