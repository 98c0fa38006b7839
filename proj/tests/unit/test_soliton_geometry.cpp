#include <algorithm>
#include <cmath>

#include "cqnls/errors.hpp"
#include "cqnls/functionals.hpp"
#include "cqnls/shooting.hpp"
#include "cqnls/soliton_geometry.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace cqnls;

TEST_SUITE("soliton_geometry") {
  TEST_CASE("rescaled soliton has beta = 1/3 and V = 0") {
    for (double w : {0.01, 0.09, 0.17}) {
      const auto p = solve_ground_state(Frequency(w));
      const auto rp = evaluate(p);
      const auto r = rescale_soliton(p);
      const auto rr = evaluate(r);
      CHECK(r.kind == ProfileKind::rescaled_soliton);
      CHECK(std::abs(rr.beta - 1.0 / 3.0) < 1e-9);
      CHECK(std::abs(rr.pohozaev) < 1e-9 * rr.grad_sq);
      CHECK(test::rel(rescaled_mass_formula(rp.beta, rp.mass), rr.mass) < 1e-8);
      CHECK(test::rel(rescaled_energy_formula(rp.beta, rp.grad_sq), rr.energy) < 1e-8);
    }
  }

  TEST_CASE("beta = 1/3 gives the identity rescaling") {
    const auto f = rescale_factors(1.0 / 3.0);
    CHECK(f.amplitude == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.dilation == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rescaled_mass_formula(1.0 / 3.0, 7.0) == doctest::Approx(7.0).epsilon(1e-15));
  }

  TEST_CASE("rescaling requires a ground state") {
    const auto g = solve_cubic_reference();
    CHECK_THROWS_AS(rescale_soliton(g), Error);
  }

  TEST_CASE("Q_alpha lands on the critical frequencies") {
    const auto& crit = test::critical();
    const auto q3 = q_alpha(1.0 / 3.0, test::curve());
    CHECK(q3.omega->value() == doctest::Approx(crit.omega_star).epsilon(1e-8));
    const auto q1 = q_alpha(1.0, test::curve());
    CHECK(q1.omega->value() == doctest::Approx(crit.omega_upper_star).epsilon(1e-8));
    CHECK(test::rel(evaluate(q1).mass, crit.m_q1) < 1e-8);
    // At beta = 1/3 the rescaled soliton is the ground state itself.
    const auto r3 = rescale_soliton(q3);
    CHECK(test::rel(evaluate(r3).mass, evaluate(q3).mass) < 1e-8);
  }

  TEST_CASE("beta(Q_alpha) = alpha round trip") {
    for (double a : {0.5, 2.0}) CHECK(std::abs(evaluate(q_alpha(a, test::curve())).beta - a) < 1e-6);
  }

  TEST_CASE("alpha outside the scanned beta range") {
    try {
      q_alpha(1e6, test::curve());
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AlphaOutOfRange);
    }
  }

  TEST_CASE("C_alpha is attained by Q_alpha") {
    for (double a : {1.0 / 3.0, 0.5, 1.0, 2.0}) {
      const auto q = q_alpha(a, test::curve());
      CHECK(std::abs(f_alpha(q, a) * c_alpha(a, q) - 1.0) < 1e-8);
      const auto r = rescale_soliton(q);
      CHECK(test::rel(f_alpha(r, a), f_alpha(q, a)) < 1e-8);
    }
  }

  TEST_CASE("C_1 = (8/3)/||Q_1||_2 and M(Q_1) = (64/9) C_1^-2") {
    const auto q = q_alpha(1.0, test::curve());
    const double c1 = c_alpha(1.0, q);
    const double m = evaluate(q).mass;
    CHECK(test::rel(c1, (8.0 / 3.0) / std::sqrt(m)) < 1e-8);
    CHECK(test::rel(64.0 / 9.0 / (c1 * c1), m) < 1e-6);
  }

  TEST_CASE("F_alpha >= 1/C_alpha on seeded random test functions") {
    const auto tests = random_test_functions(100, 20240917);
    REQUIRE(tests.size() == 100);
    for (double a : {1.0 / 3.0, 1.0, 2.0}) {
      const double inv_c = 1.0 / c_alpha(a, q_alpha(a, test::curve()));
      double worst = 1e300;
      for (const auto& t : tests) worst = std::min(worst, f_alpha(t, a) - inv_c);
      CHECK(worst >= -1e-9);
    }
  }

  TEST_CASE("random test functions are reproducible and positive") {
    const auto a = random_test_functions(5, 7);
    const auto b = random_test_functions(5, 7);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].u == b[i].u);
      CHECK(*std::min_element(a[i].u.begin(), a[i].u.end()) > 0.0);
    }
    CHECK(random_test_functions(1, 8)[0].u != a[0].u);
  }

  TEST_CASE("mass and energy ordering of rescaled solitons across the scan") {
    const auto& crit = test::critical();
    for (const auto& p : test::curve().points) {
      CAPTURE(p.omega);
      CHECK(p.rescaled_mass <= p.mass * (1.0 + 1e-8));
      CHECK(p.rescaled_energy >= p.energy - 1e-8 * std::abs(p.energy));
      CHECK(p.rescaled_mass >= crit.m_threshold - 1e-8 * crit.m_q1);
      if (std::abs(p.beta - 1.0 / 3.0) >= 1e-6) CHECK(test::rel(p.rescaled_mass, p.mass) > 1e-8);
    }
  }

  TEST_CASE("gradient norms grow with alpha; M(R_alpha) dips at alpha = 1") {
    const auto& pts = test::curve().points;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CAPTURE(pts[i].beta);
      CHECK(pts[i].grad_sq > pts[i - 1].grad_sq);
      // ||grad R||^2 = 9 E(R) when beta(R) = 1/3 and V(R) = 0.
      CHECK(pts[i].rescaled_energy > pts[i - 1].rescaled_energy);
      if (pts[i].beta <= 1.0) CHECK(pts[i].rescaled_mass < pts[i - 1].rescaled_mass);
      if (pts[i - 1].beta >= 1.0) CHECK(pts[i].rescaled_mass > pts[i - 1].rescaled_mass);
    }
  }
}
