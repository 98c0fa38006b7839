#include "cqnls/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqnls/errors.hpp"
#include "cqnls/tridiagonal.hpp"

namespace cqnls {

std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  std::size_t count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1] / q;
    q = d[i] - x - off;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const std::vector<double>& d, const std::vector<double>& e, int k,
                                       double tol) {
  const std::size_t n = d.size();
  if (k <= 0 || static_cast<std::size_t>(k) > n) throw Error(ErrorCode::InvalidArgument, "bad eigenvalue count");
  // Gershgorin bounds.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double rad = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - rad);
    hi = std::max(hi, d[i] + rad);
  }
  std::vector<double> out;
  for (int j = 0; j < k; ++j) {
    double a = lo, b = hi;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    while (b - a > tol * std::max(1.0, scale) * 1e-2) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (sturm_count(d, e, mid) > static_cast<std::size_t>(j) ? b : a) = mid;
    }
    const double guess = 0.5 * (a + b);
    // Inverse iteration at a shift just off the eigenvalue; Rayleigh quotient.
    const double shift = guess - 1e-10 * std::max(1.0, std::abs(guess));
    std::vector<double> sub(n), diag(n), sup(n), x(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      diag[i] = d[i] - shift;
      sub[i] = i > 0 ? e[i - 1] : 0.0;
      sup[i] = i + 1 < n ? e[i] : 0.0;
    }
    double lambda = guess, prev = std::numeric_limits<double>::infinity();
    bool settled = false;
    for (int it = 0; it < 20; ++it) {
      x = solve_tridiagonal<double>(sub, diag, sup, x);
      double norm = 0.0;
      for (double v : x) norm += v * v;
      norm = std::sqrt(norm);
      if (!(norm > 0.0) || !std::isfinite(norm)) break;
      for (double& v : x) v /= norm;
      double num = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double ax = d[i] * x[i];
        if (i > 0) ax += e[i - 1] * x[i - 1];
        if (i + 1 < n) ax += e[i] * x[i + 1];
        num += x[i] * ax;
      }
      lambda = num;
      if (std::abs(lambda - prev) <= tol * std::max(1.0, std::abs(lambda))) {
        settled = true;
        break;
      }
      prev = lambda;
    }
    if (!settled)
      throw Error(ErrorCode::EigSolverStalled, "inverse iteration did not settle near " + std::to_string(guess));
    // Keep the bisection value when the two disagree beyond the tolerance.
    out.push_back(std::abs(lambda - guess) <= 1e3 * tol * std::max(1.0, std::abs(guess)) ? lambda : guess);
  }
  return out;
}

LinearizedSpectra linearized_spectra(const DiscreteSoliton& s, int n_eigs, double eig_tolerance) {
  const std::size_t n = s.intervals();
  const std::size_t m = n - 1;
  const double h2 = s.dr * s.dr;
  std::vector<double> dp(m), dm(m), e(m > 0 ? m - 1 : 0, -1.0 / h2);
  double res = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    const double r = s.dr * static_cast<double>(i);
    const double rho = s.w[i] * s.w[i] / (r * r);
    dp[k] = 2.0 / h2 + s.omega - 3.0 * rho + 5.0 * rho * rho;
    dm[k] = 2.0 / h2 + s.omega - rho + rho * rho;
    const double lw = dm[k] * s.w[i] - (s.w[i - 1] + s.w[i + 1]) / h2;
    res += lw * lw;
    norm += s.w[i] * s.w[i];
  }
  LinearizedSpectra out;
  out.omega = s.omega;
  out.lminus_residual = std::sqrt(res / norm);
  out.lplus = lowest_eigenvalues(dp, e, std::max(n_eigs, 2), eig_tolerance);
  out.lminus = lowest_eigenvalues(dm, e, n_eigs, eig_tolerance);
  out.lplus_negative = static_cast<int>(sturm_count(dp, e, 0.0));
  out.lplus_gap = out.lplus[1];
  out.lplus.resize(static_cast<std::size_t>(n_eigs));
  return out;
}

LinearizedSpectra linearized_spectra(const RadialProfile& ground, int n_eigs, const SpectraConfig& cfg) {
  if (ground.kind != ProfileKind::ground_state) throw Error(ErrorCode::KindMismatch, "spectra need a ground state");
  return linearized_spectra(discrete_ground_state(ground, cfg.dr, cfg.radius), n_eigs, cfg.eig_tolerance);
}

}  // namespace cqnls
