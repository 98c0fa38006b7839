#pragma once

#include <vector>

#include "cqnls/discrete_soliton.hpp"
#include "cqnls/profile.hpp"

namespace cqnls {

/// Lowest eigenvalues of the radial linearized operators about the discrete
/// ground state, both acting on w = r v with Dirichlet ends:
///   L+ = -d^2/dr^2 + omega - 3P^2 + 5P^4,  L- = -d^2/dr^2 + omega - P^2 + P^4.
struct LinearizedSpectra {
  double omega = 0.0;
  std::vector<double> lplus;
  std::vector<double> lminus;
  double lminus_residual = 0.0;  // ||L- P|| / ||P|| in the discrete l2 norm
  int lplus_negative = 0;        // Sturm count of negative L+ eigenvalues
  double lplus_gap = 0.0;        // second L+ eigenvalue
};

struct SpectraConfig {
  double dr = 0.05;
  double radius = 0.0;  // 0 selects twice the profile's truncation radius
  double eig_tolerance = 1e-13;
};

LinearizedSpectra linearized_spectra(const RadialProfile& ground, int n_eigs, const SpectraConfig& cfg = {});
LinearizedSpectra linearized_spectra(const DiscreteSoliton& soliton, int n_eigs, double eig_tolerance = 1e-13);

/// Number of eigenvalues below x of the symmetric tridiagonal matrix with
/// diagonal d and off-diagonal e (e[i] couples i and i+1).
std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x);

/// The k lowest eigenvalues by Sturm bisection, each polished by shifted
/// inverse iteration. Throws EigSolverStalled if inverse iteration does not settle.
std::vector<double> lowest_eigenvalues(const std::vector<double>& d, const std::vector<double>& e, int k,
                                       double tol);

}  // namespace cqnls
