#include "cqnls/soliton_geometry.hpp"

#include <cmath>
#include <random>

#include "cqnls/errors.hpp"
#include "cqnls/functionals.hpp"
#include "cqnls/root_finding.hpp"
#include "cqnls/shooting.hpp"

namespace cqnls {

RescaleFactors rescale_factors(double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  return {std::sqrt((1.0 + beta) / (4.0 * beta)), 3.0 * (1.0 + beta) / (4.0 * std::sqrt(3.0 * beta))};
}

RadialProfile rescale_soliton(const RadialProfile& ground) {
  if (ground.kind != ProfileKind::ground_state)
    throw Error(ErrorCode::KindMismatch, "rescale_soliton expects a ground state");
  const double beta = evaluate(ground).beta;
  const auto [A, lambda] = rescale_factors(beta);
  RadialProfile out = ground;
  out.kind = ProfileKind::rescaled_soliton;
  out.info.reset();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.r[i] = ground.r[i] / lambda;
    out.u[i] = A * ground.u[i];
    out.du[i] = A * lambda * ground.du[i];
  }
  out.amplitude = A * ground.amplitude;
  out.tail_constant = A * ground.tail_constant / lambda;
  out.decay_rate = ground.decay_rate * lambda;
  out.truncation_radius = ground.truncation_radius / lambda;
  return out;
}

double rescaled_mass_formula(double beta, double ground_mass) {
  return 16.0 * std::sqrt(3.0 * beta) / (9.0 * (1.0 + beta) * (1.0 + beta)) * ground_mass;
}

double rescaled_energy_formula(double beta, double ground_grad_sq) {
  return ground_grad_sq / (9.0 * std::sqrt(3.0 * beta));
}

RadialProfile q_alpha(double alpha, const FrequencyCurve& curve, const ShootingConfig& cfg) {
  const auto& pts = curve.points;
  if (pts.size() < 2 || !(alpha >= pts.front().beta && alpha <= pts.back().beta))
    throw Error(ErrorCode::AlphaOutOfRange,
                "alpha = " + std::to_string(alpha) + " is outside the scanned beta range");
  std::size_t k = 0;
  while (k + 2 < pts.size() && pts[k + 1].beta < alpha) ++k;
  if (alpha == pts[k].beta) return solve_ground_state(Frequency(pts[k].omega), cfg);
  if (alpha == pts[k + 1].beta) return solve_ground_state(Frequency(pts[k + 1].omega), cfg);
  auto beta = [](const RadialProfile&, const FunctionalReport& r) { return r.beta; };
  auto root = solve_for_frequency(beta, alpha, pts[k].omega, pts[k + 1].omega, cfg, 1e-10 * alpha, 1e-15);
  return std::move(root.profile);
}

double c_alpha(double alpha, const RadialProfile& q) {
  if (q.kind != ProfileKind::ground_state) throw Error(ErrorCode::KindMismatch, "C_alpha needs a ground state");
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  const auto rep = evaluate(q);
  const double s = 1.0 + alpha;
  return 4.0 * s / (3.0 * std::pow(alpha, alpha / (2.0 * s))) /
         (std::sqrt(rep.mass) * std::pow(rep.grad_sq, (1.0 - alpha) / (2.0 * s)));
}

std::vector<RadialProfile> random_test_functions(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dsigma(0.05, 2.0), dc1(-1.0, 2.0), dc2(-0.5, 1.5);
  std::vector<RadialProfile> out;
  out.reserve(count);
  while (out.size() < count) {
    const double sigma = dsigma(rng), c1 = dc1(rng), c2 = dc2(rng);
    // 1 + c1 r + c2 r^2 > 0 for all r >= 0.
    const bool positive = c2 > 0.0 ? (c1 >= 0.0 || c1 * c1 < 4.0 * c2) : (c2 == 0.0 && c1 >= 0.0);
    if (!positive) continue;
    auto value = [=](double r) { return (1.0 + c1 * r + c2 * r * r) * std::exp(-sigma * r * r); };
    auto deriv = [=](double r) {
      return (c1 + 2.0 * c2 * r - 2.0 * sigma * r * (1.0 + c1 * r + c2 * r * r)) * std::exp(-sigma * r * r);
    };
    out.push_back(sample_profile(value, deriv, std::sqrt(60.0 / sigma) + 2.0, 6000));
  }
  return out;
}

}  // namespace cqnls
