#pragma once

#include <cstddef>
#include <vector>

#include "cqnls/errors.hpp"

namespace cqnls {

/// Solves a tridiagonal system by the Thomas algorithm. sub[i] multiplies
/// x[i-1] in row i (sub[0] unused), sup[i] multiplies x[i+1] (sup[n-1] unused).
/// Intended for the diagonally dominant or definite systems built in this
/// library; no pivoting.
template <class T, class D = T>
std::vector<T> solve_tridiagonal(const std::vector<D>& sub, const std::vector<D>& diag,
                                 const std::vector<D>& sup, std::vector<T> rhs) {
  const std::size_t n = diag.size();
  if (n == 0) return rhs;
  std::vector<D> c(n);
  D beta = diag[0];
  if (beta == D(0)) throw Error(ErrorCode::ConvergenceFailure, "zero pivot in tridiagonal solve");
  rhs[0] = rhs[0] / beta;
  for (std::size_t i = 1; i < n; ++i) {
    c[i - 1] = sup[i - 1] / beta;
    beta = diag[i] - sub[i] * c[i - 1];
    if (beta == D(0)) throw Error(ErrorCode::ConvergenceFailure, "zero pivot in tridiagonal solve");
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / beta;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = rhs[i] - c[i] * rhs[i + 1];
  return rhs;
}

}  // namespace cqnls
