#pragma once

#include <cstddef>
#include <vector>

namespace cqnls {

/// Composite quadrature weights on n+1 equally spaced nodes: Simpson's rule,
/// with the 3/8 rule on the last three intervals when n is odd.
std::vector<double> simpson_weights(std::size_t intervals, double h);

/// Approximates the integral of f(r) r^(dim-1) over the sampled interval
/// [r0, r0 + n h]. dim is 1 or 3; the angular factor is left to the caller.
double radial_integral(const std::vector<double>& f, double r0, double h, int dim);

}  // namespace cqnls
