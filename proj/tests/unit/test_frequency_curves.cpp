#include <algorithm>
#include <cmath>

#include "cqnls/errors.hpp"
#include "cqnls/frequency_curves.hpp"
#include "cqnls/shooting.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace cqnls;

namespace {

int sign_changes(const std::vector<FrequencyCurvePoint>& pts) {
  int changes = 0, last = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const int s = pts[i].mass > pts[i - 1].mass ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

TEST_SUITE("frequency_curves") {
  TEST_CASE("default grid") {
    const auto g = default_scan_grid();
    REQUIRE(g.size() == 60);
    CHECK(g.front() == 0.004);
    CHECK(g.back() == 0.185);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    // Denser near both ends than in the middle.
    CHECK(g[1] - g[0] < g[30] - g[29]);
    CHECK(g[59] - g[58] < g[30] - g[29]);
  }

  TEST_CASE("single-node scan") {
    const auto c = scan({0.05});
    REQUIRE(c.points.size() == 1);
    CHECK(std::abs(c.points[0].pohozaev_residual) < 1e-7);
    CHECK(c.failures.empty());
  }

  TEST_CASE("scan records failed nodes and keeps going") {
    const auto c = scan({0.2, 0.05, 0.05, 0.1});
    CHECK(c.points.size() == 2);
    REQUIRE(c.failures.size() == 1);
    CHECK(c.failures[0].omega == 0.2);
    CHECK_THROWS_AS(scan({}), Error);
  }

  TEST_CASE("scanned curve: every node solved, residuals gated") {
    const auto& c = test::curve();
    CHECK(c.points.size() == 60);
    CHECK(c.failures.empty());
    for (const auto& p : c.points) {
      CHECK(std::abs(p.nehari_residual) < 1e-7);
      CHECK(std::abs(p.pohozaev_residual) < 1e-7);
      CHECK(p.mass > 0.0);
      CHECK(p.beta > 0.0);
    }
  }

  TEST_CASE("beta is strictly increasing") {
    const auto& pts = test::curve().points;
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].beta > pts[i - 1].beta);
  }

  TEST_CASE("mass decreases then increases with one sign change") {
    CHECK(sign_changes(test::curve().points) == 1);
    CHECK(test::curve().points[1].mass < test::curve().points[0].mass);
  }

  TEST_CASE("derivative identities at every node") {
    for (const auto& p : test::curve().points) {
      CAPTURE(p.omega);
      REQUIRE(p.grad_identity_error);
      CHECK(*p.grad_identity_error < 1e-3);
      CHECK(*p.energy_identity_error < 1e-3);
      CHECK(*p.d_second_error < 1e-2);
    }
  }

  TEST_CASE("mass slope bound M' < (3 beta - 1) M / (2 omega)") {
    for (const auto& p : test::curve().points) {
      const double bound = (3.0 * p.beta - 1.0) / (2.0 * p.omega) * p.mass;
      CHECK(*p.mass_derivative < bound + 1e-3 * std::abs(bound));
    }
  }

  TEST_CASE("d'' sign structure") {
    const auto& crit = test::critical();
    for (const auto& p : test::curve().points) {
      CAPTURE(p.omega);
      if (p.omega < crit.omega_star) CHECK(*p.d_second < 0.0);
      // The measured mass minimum sits slightly above omega_star; d'' >= 0 is
      // asserted from there on.
      if (p.omega > crit.mass_argmin) CHECK(*p.d_second >= 0.0);
    }
  }

  TEST_CASE("critical frequencies") {
    const auto& c = test::critical();
    CHECK(std::abs(c.beta_at_star - 1.0 / 3.0) < 1e-8);
    CHECK(std::abs(c.beta_at_upper_star - 1.0) < 1e-8);
    CHECK(0.0 < c.omega_star);
    CHECK(c.omega_star < c.omega_upper_star);
    CHECK(c.omega_upper_star < kOmegaMax);
    CHECK(std::abs(c.m_threshold / c.m_q1 - 4.0 / (3.0 * std::sqrt(3.0))) < 1e-12);
    CHECK(c.m_threshold < c.m_q1);
    CHECK(std::abs(c.mass_argmin - c.omega_star) <= 2.0 * c.argmin_spacing);
    CHECK(test::rel(c.m0, solve_point(c.omega_star).mass) < 1e-9);
  }

  TEST_CASE("locate_critical needs a bracket") {
    const auto c = scan({0.1, 0.12});
    try {
      locate_critical(c);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TargetNotBracketed);
    }
  }

  TEST_CASE("differentiate needs five points") {
    CHECK_THROWS_AS(differentiate(scan({0.05, 0.06, 0.07})), Error);
  }

  TEST_CASE("stability labels and the slope condition") {
    const auto& crit = test::critical();
    const double ws = crit.omega_star;
    const double below = 0.5 * ws, above = 0.5 * (ws + kOmegaMax);
    auto c = differentiate(scan({0.5 * below, below, ws, above, 0.5 * (above + kOmegaMax)}));
    c = classify_stability(c, crit);
    REQUIRE(c.points.size() == 5);
    CHECK(c.points[1].stability == Stability::unstable);
    CHECK(*c.points[1].mass_derivative < 0.0);
    CHECK(*c.points[1].slope_agrees);
    CHECK(c.points[2].stability == Stability::critical);
    CHECK_FALSE(c.points[2].slope_agrees.has_value());
    CHECK(c.points[3].stability == Stability::stable);
    CHECK(*c.points[3].mass_derivative > 0.0);
    CHECK(*c.points[3].slope_agrees);
  }

  TEST_CASE("small-frequency expansions and endpoint slopes") {
    auto extra = scan({0.006, 0.01});
    FrequencyCurve c = test::curve();
    for (auto& p : extra.points) c.points.push_back(p);
    std::sort(c.points.begin(), c.points.end(), [](const auto& a, const auto& b) { return a.omega < b.omega; });
    const auto rep = asymptotic_check(c, solve_cubic_reference(), 0.01, 0.17);
    REQUIRE(rep.small.size() >= 3);
    CHECK(rep.small.front().omega == 0.004);
    CHECK(rep.small.front().mass_error < 0.05);
    for (std::size_t i = 1; i < rep.small.size(); ++i) {
      CHECK(rep.small[i].mass_error > rep.small[i - 1].mass_error);
      CHECK(rep.small[i].mass_leading_error > rep.small[i - 1].mass_leading_error);
    }
    CHECK(std::abs(rep.beta_slope + 1.0) < 0.15);
    CHECK(std::abs(rep.mass_slope + 3.0) < 0.3);
  }

  TEST_CASE("asymptotic check preconditions") {
    const auto g = solve_cubic_reference();
    CHECK_THROWS_AS(asymptotic_check(test::curve(), solve_ground_state(Frequency(0.05))), Error);
    FrequencyCurve mid;
    for (const auto& p : test::curve().points)
      if (p.omega > 0.05 && p.omega < 0.1) mid.points.push_back(p);
    try {
      asymptotic_check(mid, g);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InsufficientCoverage);
    }
  }

  TEST_CASE("mass argmin resolves flat sets to their middle") {
    FrequencyCurve c;
    const double w[] = {0.01, 0.02, 0.03, 0.04, 0.05, 0.06};
    const double m[] = {5.0, 3.0, 1.0, 1.0, 1.0, 4.0};
    for (int i = 0; i < 6; ++i) {
      FrequencyCurvePoint p;
      p.omega = w[i];
      p.mass = m[i];
      c.points.push_back(p);
    }
    double spacing = 0.0;
    CHECK(mass_argmin(c, &spacing) == doctest::Approx(0.04));
    CHECK(spacing == doctest::Approx(0.01));
  }
}
