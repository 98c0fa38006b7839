#include "cqnls/quadrature.hpp"

#include <cmath>

#include "cqnls/errors.hpp"

namespace cqnls {

std::vector<double> simpson_weights(std::size_t n, double h) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least two intervals");
  std::vector<double> w(n + 1, 0.0);
  std::size_t simpson_end = n;
  if (n % 2 == 1) {
    simpson_end = n - 3;
    const double c = 3.0 * h / 8.0;
    w[n - 3] += c;
    w[n - 2] += 3.0 * c;
    w[n - 1] += 3.0 * c;
    w[n] += c;
  }
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  return w;
}

double radial_integral(const std::vector<double>& f, double r0, double h, int dim) {
  if (dim != 1 && dim != 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 1 or 3");
  if (f.size() < 3) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least three samples");
  const auto w = simpson_weights(f.size() - 1, h);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = r0 + h * static_cast<double>(i);
    sum += w[i] * f[i] * (dim == 3 ? r * r : 1.0);
  }
  return sum;
}

}  // namespace cqnls
