#include <cmath>

#include "cqnls/errors.hpp"
#include "cqnls/landscape.hpp"
#include "cqnls/shooting.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace cqnls;

TEST_SUITE("landscape") {
  TEST_CASE("measured threshold order") {
    const auto& c = test::critical();
    CHECK(c.m_threshold < c.m0);
    CHECK(c.m0 < c.m_q1);
  }

  TEST_CASE("no normalized solution below m0") {
    const auto r = classify_normalized(0.5 * test::critical().m0, test::curve(), test::critical());
    CHECK(r.count == 0);
    CHECK(r.frequencies.empty());
  }

  TEST_CASE("exactly the critical ground state at m0") {
    const auto& c = test::critical();
    const auto r = classify_normalized(c.m0, test::curve(), c);
    REQUIRE(r.count == 1);
    CHECK(r.frequencies[0] == c.omega_star);
    CHECK(r.branch_labels[0] == Branch::critical);
    CHECK(r.stability_labels[0] == Stability::critical);
  }

  TEST_CASE("two normalized solutions straddling omega_star above m0") {
    const auto& c = test::critical();
    for (double ratio : {1.05, 1.5}) {
      const double m = ratio * c.m0;
      const auto r = classify_normalized(m, test::curve(), c);
      REQUIRE(r.count == 2);
      REQUIRE(r.frequencies.size() == 2);
      CHECK(r.frequencies[0] < c.omega_star);
      CHECK(c.omega_star < r.frequencies[1]);
      CHECK(r.frequencies[0] > 0.0);
      CHECK(r.frequencies[1] < kOmegaMax);
      CHECK(r.branch_labels[0] == Branch::lower_branch);
      CHECK(r.branch_labels[1] == Branch::upper_branch);
      CHECK(r.stability_labels[0] == Stability::unstable);
      CHECK(r.stability_labels[1] == Stability::stable);
      for (double w : r.frequencies) CHECK(test::rel(solve_point(w).mass, m) < 1e-6);
    }
  }

  TEST_CASE("masses beyond the scan") {
    try {
      classify_normalized(1e9, test::curve(), test::critical());
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MassBeyondScan);
    }
  }

  TEST_CASE("extended reals") {
    CHECK(ExtendedReal::infinity().is_infinite());
    CHECK_THROWS_AS(ExtendedReal::infinity().value(), Error);
    CHECK(ExtendedReal::finite(-2.5).value() == -2.5);
  }

  TEST_CASE("below the threshold: E_min = 0 not achieved, E_min^V infinite") {
    const auto& c = test::critical();
    const auto r = e_min_landscape(0.5 * c.m_threshold, test::curve(), c);
    CHECK(r.regime == LandscapeCase::below_threshold);
    CHECK(r.e_min.value() == 0.0);
    CHECK_FALSE(r.e_min_achieved);
    CHECK(r.e_min_v.is_infinite());
    CHECK(r.minimizer_kind == MinimizerKind::none);
  }

  TEST_CASE("at M(Q1): E_min = 0 achieved by Q1") {
    const auto& c = test::critical();
    const auto r = e_min_landscape(c.m_q1, test::curve(), c);
    CHECK(r.regime == LandscapeCase::boundary);
    CHECK(r.e_min.value() == 0.0);
    CHECK(r.e_min_achieved);
    CHECK(r.minimizer_kind == MinimizerKind::boundary_q1);
  }

  TEST_CASE("between m0 and M(Q1) the ground state minimizes E^V") {
    const auto& c = test::critical();
    const double m = 0.9 * c.m_q1;
    REQUIRE(m > c.m0);
    const auto r = e_min_landscape(m, test::curve(), c);
    CHECK(r.regime == LandscapeCase::ground_state_positive);
    CHECK(r.minimizer_kind == MinimizerKind::ground_state);
    CHECK(r.e_min.value() == 0.0);
    CHECK_FALSE(r.e_min_achieved);
    CHECK(r.e_min_v.value() > 0.0);
  }

  TEST_CASE("between the threshold and m0 a rescaled soliton minimizes E^V") {
    const auto& c = test::critical();
    const auto r = e_min_landscape(0.5 * (c.m_threshold + c.m0), test::curve(), c);
    CHECK(r.regime == LandscapeCase::rescaled_only);
    CHECK(r.minimizer_kind == MinimizerKind::rescaled_soliton);
    CHECK(r.normalized.count == 0);
    CHECK(r.e_min_v.value() > 0.0);
  }

  TEST_CASE("twenty-mass grid covers the five regimes") {
    const auto& c = test::critical();
    const auto masses = landscape_mass_grid(c);
    REQUIRE(masses.size() == 20);
    int counts[5] = {0, 0, 0, 0, 0};
    double prev_v = 1e300;
    for (double m : masses) {
      const auto r = e_min_landscape(m, test::curve(), c);
      ++counts[static_cast<int>(r.regime)];
      if (m >= c.m_threshold) {
        REQUIRE_FALSE(r.e_min_v.is_infinite());
        CHECK(r.e_min_v.value() < prev_v);
        prev_v = r.e_min_v.value();
      }
      if (m >= c.m_threshold && m < c.m_q1) CHECK(r.e_min_v.value() > 0.0);
      if (m > c.m_q1) {
        CHECK(r.e_min_achieved);
        CHECK(r.e_min.value() < 0.0);
        CHECK(r.e_min.value() == r.e_min_v.value());
      }
    }
    CHECK(counts[0] == 5);
    CHECK(counts[1] == 4);
    CHECK(counts[2] == 5);
    CHECK(counts[3] == 1);
    CHECK(counts[4] == 5);
  }

  TEST_CASE("gradient flow certifies the branch minimum") {
    const auto& c = test::critical();
    for (double ratio : {1.2, 2.0}) {
      const double m = ratio * c.m_q1;
      const auto r = e_min_landscape(m, test::curve(), c);
      const auto cert = certify_e_min_by_flow(m);
      CHECK(test::rel(cert.energy, r.e_min.value()) < 1e-4);
      CHECK(cert.energy < 0.0);
    }
    const auto cert = certify_e_min_by_flow(c.m_q1);
    CHECK(std::abs(cert.energy) < 1e-6);
  }
}
