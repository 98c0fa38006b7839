#include <algorithm>
#include <cmath>

#include "cqnls/errors.hpp"
#include "cqnls/functionals.hpp"
#include "cqnls/gradient_flow.hpp"
#include "cqnls/shooting.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace cqnls;

TEST_SUITE("radial_core") {
  TEST_CASE("ground state at omega = 0.09 passes both residual gates") {
    const auto p = solve_ground_state(Frequency(0.09));
    const auto r = evaluate(p);
    CHECK(std::abs(r.nehari_residual) < 1e-7);
    CHECK(std::abs(r.pohozaev_residual) < 1e-7);
    CHECK(p.kind == ProfileKind::ground_state);
    CHECK(p.du.front() == 0.0);
  }

  TEST_CASE("profile is positive, decreasing and matches the exponential tail") {
    const auto p = solve_ground_state(Frequency(0.09));
    for (std::size_t i = 1; i < p.size(); ++i) {
      REQUIRE(p.u[i] > 0.0);
      REQUIRE(p.u[i] < p.u[i - 1]);
    }
    REQUIRE(p.info);
    CHECK(p.info->tail_mismatch < 1e-3);
    CHECK(p.decay_rate == doctest::Approx(0.3).epsilon(1e-15));
    const auto [a, b] = p.info->matching_window;
    for (double r = a; r <= b; r += 1.0) {
      const double c = p.at(r).first * r * std::exp(0.3 * r);
      CHECK(test::rel(c, p.tail_constant) < 1e-3);
    }
  }

  TEST_CASE("mass-projected gradient flow reproduces the shooting profile") {
    const auto p = solve_ground_state(Frequency(0.09));
    const auto rep = evaluate(p);
    FlowConfig fc;
    fc.radius = p.r.back();
    fc.spacing = p.spacing();
    const auto flow = mass_projected_flow(rep.mass, [](double r) { return std::exp(-r * r / 100.0); }, fc);
    CHECK(flow.gradient_norm < 1e-9);
    double diff = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) diff = std::max(diff, std::abs(p.u[i] - flow.profile.u[i]));
    CHECK(diff < 1e-6);
    CHECK(flow.frequency == doctest::Approx(0.09).epsilon(1e-8));
  }

  TEST_CASE("frequencies outside (0, 3/16) are rejected") {
    for (double w : {0.1875, 0.2, 0.0, -0.01}) {
      try {
        solve_ground_state(Frequency(w));
        FAIL("no error for omega = " << w);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FrequencyOutOfWindow);
      }
    }
  }

  TEST_CASE("cubic reference state") {
    const auto g = solve_cubic_reference();
    const auto r = evaluate(g);
    CHECK(g.kind == ProfileKind::cubic_reference);
    CHECK_FALSE(g.omega.has_value());
    CHECK(std::abs(r.nehari_residual) < 1e-7);
    CHECK(std::abs(r.pohozaev_residual) < 1e-7);
    // Independent solve_ivp shooting (rtol 1e-13) gives M(g) = 18.8972513.
    CHECK(test::rel(r.mass, 18.8972513) < 1e-7);
    CHECK(cubic_reference_mass() == r.mass);
    CHECK(r.energy > 0.0);
    CHECK(std::isfinite(r.l6));
    const double c8 = g.at(8.0).first * 8.0 * std::exp(8.0);
    const double c12 = g.at(12.0).first * 12.0 * std::exp(12.0);
    CHECK(test::rel(c12, c8) < 1e-3);
  }

  TEST_CASE("Nehari-projected flow reproduces the cubic reference state") {
    const auto g = solve_cubic_reference();
    FlowConfig fc;
    fc.radius = g.r.back();
    fc.spacing = g.spacing();
    const auto flow = nehari_projected_flow(1.0, 0.0, [](double r) { return 4.0 * std::exp(-r * r / 2.0); }, fc);
    double diff = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) diff = std::max(diff, std::abs(g.u[i] - flow.profile.u[i]));
    // The flow recovers u(0) from a one-sided derivative of w = r u.
    CHECK(diff < 1e-5);
    CHECK(test::rel(evaluate(flow.profile).mass, evaluate(g).mass) < 1e-6);
  }

  TEST_CASE("trajectory classes") {
    const Frequency w(0.09);
    CHECK(classify_trajectory(1e-6, w) == TrajectoryClass::TurnsUpward);
    Nonlinearity nl{0.09, 1.0};
    CHECK(classify_trajectory(nl.potential_root() + 0.1, w) == TrajectoryClass::TurnsUpward);
    CHECK(classify_trajectory(nl.plateau_level() * 1.001, w) == TrajectoryClass::TurnsUpward);
    // Below the ground-state amplitude trajectories turn upward; between it
    // and the plateau level they cross zero.
    CHECK(classify_trajectory(0.8, w) == TrajectoryClass::TurnsUpward);
    CHECK(classify_trajectory(0.93, w) == TrajectoryClass::CrossesZero);
    const auto p = solve_ground_state(w);
    CHECK(classify_trajectory(p.amplitude, w) == TrajectoryClass::Undetermined);
    CHECK(classify_trajectory(p.amplitude - 1e-8, w) == TrajectoryClass::TurnsUpward);
  }

  TEST_CASE("bisection bracket classes never flip as the bracket shrinks") {
    const Frequency w(0.09);
    const auto [lo0, hi0] = default_amplitude_bracket(Nonlinearity{0.09, 1.0});
    double lo = lo0, hi = 0.93;
    REQUIRE(hi < hi0);
    const auto c_lo = classify_trajectory(lo, w);
    const auto c_hi = classify_trajectory(hi, w);
    REQUIRE(c_lo != c_hi);
    for (int i = 0; i < 30; ++i) {
      const double mid = 0.5 * (lo + hi);
      const auto c = classify_trajectory(mid, w);
      if (c == TrajectoryClass::Undetermined) break;
      (c == c_lo ? lo : hi) = mid;
      CHECK(classify_trajectory(lo, w) == c_lo);
      CHECK(classify_trajectory(hi, w) == c_hi);
    }
  }

  TEST_CASE("halving the ODE tolerance moves the amplitude by less than 10 bisection tolerances") {
    for (double w : {0.01, 0.09, 0.18}) {
      ShootingConfig a;
      a.ode_tolerance = 1e-10;
      ShootingConfig b = a;
      b.ode_tolerance = 5e-11;
      REQUIRE(step_for_tolerance(a.ode_tolerance) != step_for_tolerance(b.ode_tolerance));
      const double da = solve_ground_state(Frequency(w), a).amplitude - solve_ground_state(Frequency(w), b).amplitude;
      CHECK(std::abs(da) < 10.0 * a.bisection_tolerance);
    }
  }

  TEST_CASE("solves with different admissible max_radius agree on the common grid") {
    for (double w : {0.02, 0.09, 0.15}) {
      const auto a = solve_ground_state(Frequency(w));
      ShootingConfig cfg;
      cfg.max_radius = 1.25 * default_max_radius(w);
      cfg.grid_spacing = a.spacing();
      const auto b = solve_ground_state(Frequency(w), cfg);
      REQUIRE(b.size() > a.size());
      double diff = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a.u[i] - b.u[i]));
      CHECK(diff < 1e-8);
    }
  }

  TEST_CASE("default domain and grid") {
    CHECK(default_max_radius(0.01) == doctest::Approx(400.0));
    CHECK(default_max_radius(0.5) == doctest::Approx(60.0));
    CHECK(default_grid_spacing(0.25) == doctest::Approx(0.02));
    CHECK(default_grid_spacing(0.5) == doctest::Approx(0.01 / std::sqrt(0.5)));
  }

  TEST_CASE("invalid configurations are rejected") {
    ShootingConfig cfg;
    cfg.amplitude_bracket = std::pair{0.5, 0.4};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.ode_tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.max_radius = 50.0;
    cfg.matching_window = std::pair{40.0, 60.0};
    CHECK_THROWS_AS(cfg.validate(), Error);
  }

  TEST_CASE("an amplitude bracket that does not separate the classes is a BracketFailure") {
    ShootingConfig cfg;
    cfg.amplitude_bracket = std::pair{1e-6, 1e-3};
    try {
      solve_ground_state(Frequency(0.09), cfg);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BracketFailure);
    }
  }

  TEST_CASE("a domain that is too short is a DomainTooSmall") {
    ShootingConfig cfg;
    cfg.max_radius = 40.0;
    cfg.max_domain_doublings = 0;
    try {
      solve_ground_state(Frequency(0.05), cfg);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DomainTooSmall);
    }
  }
}
