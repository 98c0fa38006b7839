#pragma once

#include <cstdint>
#include <vector>

#include "cqnls/frequency_curves.hpp"
#include "cqnls/profile.hpp"

namespace cqnls {

/// Dilation and amplitude factors of the rescaled soliton A P(lambda x):
/// A = sqrt((1+beta)/(4 beta)), lambda = 3(1+beta)/(4 sqrt(3 beta)).
struct RescaleFactors {
  double amplitude;
  double dilation;
};

RescaleFactors rescale_factors(double beta);

/// The unique rescaling of a ground state with beta = 1/3 and V = 0.
RadialProfile rescale_soliton(const RadialProfile& ground);

/// Closed-form mass and energy of the rescaled soliton in terms of the ground state.
double rescaled_mass_formula(double beta, double ground_mass);
double rescaled_energy_formula(double beta, double ground_grad_sq);

/// Ground state with beta(omega) = alpha, found on the bracket of scanned
/// points that straddles alpha (beta is increasing in omega).
RadialProfile q_alpha(double alpha, const FrequencyCurve& curve, const ShootingConfig& cfg = {});

/// C_alpha = 4(1+alpha) / (3 alpha^(alpha/(2(1+alpha)))) / (||Q||_2 ||grad Q||_2^((1-alpha)/(1+alpha))).
double c_alpha(double alpha, const RadialProfile& q);

/// Seeded family (1 + c1 r + c2 r^2) exp(-sigma r^2), positive on r >= 0.
std::vector<RadialProfile> random_test_functions(std::size_t count, std::uint64_t seed);

}  // namespace cqnls
