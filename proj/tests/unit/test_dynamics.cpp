#include <cmath>
#include <complex>
#include <numbers>

#include "cqnls/discrete_soliton.hpp"
#include "cqnls/dynamics.hpp"
#include "cqnls/errors.hpp"
#include "cqnls/shooting.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace cqnls;

namespace {

const DiscreteSoliton& soliton() {
  static const auto s = discrete_ground_state(solve_ground_state(Frequency(0.09)));
  return s;
}

EvolutionState gaussian(double amp, double dr = 0.05, double radius = 60.0) {
  EvolutionState s;
  s.dr = dr;
  const auto n = static_cast<std::size_t>(std::llround(radius / dr));
  s.w.assign(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double r = dr * static_cast<double>(i);
    s.w[i] = amp * r * std::exp(-r * r / 4.0);
  }
  return s;
}

double l2_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("discrete soliton is a converged positive solution") {
    const auto& s = soliton();
    CHECK(s.residual < 1e-10);
    CHECK(s.w.front() == 0.0);
    CHECK(s.w.back() == 0.0);
    for (std::size_t i = 1; i + 1 < s.w.size(); ++i) REQUIRE(s.w[i] > 0.0);
  }

  TEST_CASE("unperturbed soliton keeps its modulus") {
    const auto& ds = soliton();
    double norm = 0.0;
    for (double v : ds.w) norm += v * v;
    double worst = 0.0, worst_momentum = 0.0;
    EvolveConfig cfg;
    const auto end = evolve(state_from(ds), 10.0, cfg, [&](const EvolutionState& s, LedgerEntry& e) {
      double d = 0.0;
      for (std::size_t i = 0; i < s.w.size(); ++i) {
        const double x = std::abs(s.w[i]) - ds.w[i];
        d += x * x;
      }
      worst = std::max(worst, std::sqrt(d / norm));
      worst_momentum = std::max(worst_momentum, std::abs(e.momentum));
    });
    CHECK(worst < 1e-4);
    CHECK(worst_momentum < 1e-12);
    CHECK(end.time == doctest::Approx(10.0));
    // The phase rotates at the rate omega.
    const std::size_t mid = ds.w.size() / 8;
    CHECK(std::arg(end.w[mid] / ds.w[mid]) == doctest::Approx(std::remainder(0.9, 2.0 * std::numbers::pi)).epsilon(1e-3));
  }

  TEST_CASE("ledger mass is the discrete quadratic invariant") {
    const auto s0 = state_from(soliton(), 1.01);
    EvolveConfig cfg;
    cfg.sponge_strength = 0.0;
    const auto end = evolve(s0, 5.0, cfg);
    const double m0 = discrete_mass(s0);
    CHECK(end.ledger.front().mass == doctest::Approx(m0).epsilon(1e-15));
    for (const auto& e : end.ledger) CHECK(test::rel(e.mass, m0) < 1e-10);
    CHECK(test::rel(discrete_mass(end), m0) < 1e-10);
    const double e0 = discrete_energy(s0);
    for (const auto& e : end.ledger) CHECK(std::abs(e.energy - e0) < 1e-9 * std::abs(e0));
  }

  TEST_CASE("tiny Gaussian follows the free evolution and conserves mass") {
    const auto s0 = gaussian(1e-4);
    EvolveConfig nl;
    nl.sponge_strength = 0.0;
    EvolveConfig lin = nl;
    lin.nonlinear = false;
    const auto a = evolve(s0, 5.0, nl);
    const auto b = evolve(s0, 5.0, lin);
    const double m0 = discrete_mass(s0);
    CHECK(test::rel(discrete_mass(a), m0) < 1e-8);
    double norm = 0.0;
    for (const auto& v : s0.w) norm += std::norm(v);
    CHECK(l2_diff(a.w, b.w) / std::sqrt(norm) < 1e-6);
    // It disperses: the peak modulus drops.
    double peak0 = 0.0, peak = 0.0;
    for (std::size_t i = 1; i < s0.w.size(); ++i) {
      const double r = s0.dr * static_cast<double>(i);
      peak0 = std::max(peak0, std::abs(s0.w[i]) / r);
      peak = std::max(peak, std::abs(a.w[i]) / r);
    }
    CHECK(peak < 0.5 * peak0);
  }

  TEST_CASE("halving dt reduces the error about fourfold") {
    const auto s0 = state_from(soliton(), 1.01);
    auto run = [&](double dt) {
      EvolveConfig c;
      c.dt = dt;
      c.sponge_strength = 0.0;
      c.ledger_interval = 1.0;
      return evolve(s0, 2.0, c).w;
    };
    const auto ref = run(0.0025);
    const double e1 = l2_diff(run(0.02), ref);
    const double e2 = l2_diff(run(0.01), ref);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
  }

  TEST_CASE("sponge absorption is accounted for") {
    // A Gaussian launched near the sponge loses mass into it.
    EvolutionState s = gaussian(0.3, 0.05, 40.0);
    const double m0 = discrete_mass(s);
    EvolveConfig cfg;
    cfg.sponge_strength = 2.0;
    cfg.sponge_fraction = 0.5;
    const auto end = evolve(s, 10.0, cfg);
    CHECK(end.absorbed_mass > 1e-3 * m0);
    CHECK(test::rel(discrete_mass(end) + end.absorbed_mass, m0) < 1e-6);
  }

  TEST_CASE("conservation breach is reported") {
    EvolveConfig cfg;
    cfg.conservation_tolerance = 1e-300;
    try {
      evolve(state_from(soliton(), 1.01), 1.0, cfg);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConservationBreach);
    }
  }

  TEST_CASE("exact soliton has near-zero modulated distance") {
    StabilityConfig cfg;
    const auto rep = stability_experiment(Frequency(0.09), 0.0, 5.0, cfg);
    CHECK(rep.max_modulated_distance < 1e-4);
    CHECK(rep.ledger.size() == 11);
  }

  TEST_CASE("perturbation size is limited") {
    CHECK_THROWS_AS(stability_experiment(Frequency(0.09), 0.06, 1.0), Error);
    CHECK_THROWS_AS(stability_experiment(Frequency(0.2), 0.01, 1.0), Error);
  }
}
