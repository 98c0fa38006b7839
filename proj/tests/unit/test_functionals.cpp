#include <cmath>
#include <limits>
#include <numbers>

#include "cqnls/errors.hpp"
#include "cqnls/functionals.hpp"
#include "cqnls/quadrature.hpp"
#include "cqnls/shooting.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace cqnls;

namespace {

// (1 + c r^2) exp(-s r^2) dilated by lam and scaled by amp.
RadialProfile bump(double lam = 1.0, double amp = 1.0, std::size_t n = 6000, double c = 0.5, double s = 1.0) {
  const double radius = 12.0 / lam;
  return sample_profile(
      [=](double r) {
        const double x = lam * r;
        return amp * (1.0 + c * x * x) * std::exp(-s * x * x);
      },
      [=](double r) {
        const double x = lam * r;
        return amp * lam * (2.0 * c * x - 2.0 * s * x * (1.0 + c * x * x)) * std::exp(-s * x * x);
      },
      radius, n);
}

}  // namespace

TEST_SUITE("functionals") {
  TEST_CASE("Gaussian mass is (pi/2)^(3/2)") {
    const auto g = sample_profile([](double r) { return std::exp(-r * r); },
                                  [](double r) { return -2.0 * r * std::exp(-r * r); }, 12.0, 4800);
    const auto rep = evaluate(g);
    CHECK(test::rel(rep.mass, std::pow(std::numbers::pi / 2.0, 1.5)) < 1e-10);
    // int |grad e^{-r^2}|^2 = 3 (pi/2)^(3/2).
    CHECK(test::rel(rep.grad_sq, 3.0 * std::pow(std::numbers::pi / 2.0, 1.5)) < 1e-10);
    CHECK(std::isnan(rep.nehari_residual));
  }

  TEST_CASE("report invariants hold exactly as computed") {
    const auto rep = evaluate(bump());
    CHECK(rep.beta == rep.l6 / rep.grad_sq);
    CHECK(rep.pohozaev == doctest::Approx(rep.grad_sq + rep.l6 - 0.75 * rep.l4).epsilon(1e-15));
    CHECK(rep.mass > 0.0);
    CHECK(rep.grad_sq > 0.0);
  }

  TEST_CASE("F_alpha is invariant under dilation and amplitude scaling") {
    for (double alpha : {1.0 / 3.0, 1.0, 2.0}) {
      const double f = f_alpha(bump(), alpha);
      CHECK(test::rel(f_alpha(bump(2.0), alpha), f) < 1e-10);
      CHECK(test::rel(f_alpha(bump(1.0, 3.0), alpha), f) < 1e-10);
    }
  }

  TEST_CASE("beta scales by lambda^-2 under dilation") {
    const double b1 = evaluate(bump()).beta;
    const double b2 = evaluate(bump(2.0, 1.0, 3000)).beta;
    CHECK(test::rel(b2, b1 / 4.0) < 1e-10);
  }

  TEST_CASE("halving the grid spacing changes smooth integrals by less than 1e-9") {
    const auto a = evaluate(bump(1.0, 1.0, 3000));
    const auto b = evaluate(bump(1.0, 1.0, 6000));
    CHECK(test::rel(a.mass, b.mass) < 1e-9);
    CHECK(test::rel(a.grad_sq, b.grad_sq) < 1e-9);
    CHECK(test::rel(a.l4, b.l4) < 1e-9);
    CHECK(test::rel(a.l6, b.l6) < 1e-9);
  }

  TEST_CASE("non-finite samples are reported") {
    auto p = bump();
    p.u[10] = std::numeric_limits<double>::quiet_NaN();
    try {
      evaluate(p);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonFiniteIntegrand);
    }
  }

  TEST_CASE("ground states satisfy the beta-form energy and mass identities") {
    for (double w : {0.004, 0.03, 0.09, 0.15, 0.185}) {
      const auto p = solve_ground_state(Frequency(w));
      const auto r = evaluate(p);
      CHECK(test::rel((1.0 - r.beta) / 6.0 * r.grad_sq, r.energy) < 1e-7);
      CHECK(test::rel((r.beta + 1.0) / (3.0 * w) * r.grad_sq, r.mass) < 1e-7);
      CHECK(std::abs(r.pohozaev) / r.grad_sq < 1e-7);
    }
  }

  TEST_CASE("d computed directly and from the beta-form identities") {
    for (double w : {0.01, 0.09, 0.15}) {
      const auto p = solve_ground_state(Frequency(w));
      const auto r = evaluate(p);
      const double other = (1.0 - r.beta) / 6.0 * r.grad_sq + 0.5 * w * (r.beta + 1.0) / (3.0 * w) * r.grad_sq;
      CHECK(test::rel(d_scalar(p), other) < 1e-8);
    }
    CHECK(d_scalar(solve_ground_state(Frequency(0.005))) > 0.0);
  }

  TEST_CASE("d is not invariant under amplitude scaling") {
    auto p = solve_ground_state(Frequency(0.09));
    const double d = d_scalar(p);
    for (auto& v : p.u) v *= 2.0;
    for (auto& v : p.du) v *= 2.0;
    p.tail_constant *= 2.0;
    CHECK(std::abs(d_scalar(p) - d) > 1e-3 * std::abs(d));
  }

  TEST_CASE("d requires a ground state") {
    try {
      d_scalar(bump());
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::KindMismatch);
    }
  }

  TEST_CASE("radial quadrature integrates polynomials exactly") {
    std::vector<double> f(11);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0;
    // Odd interval count uses the 3/8 rule at the end; both are exact for r^2 weights.
    CHECK(radial_integral(f, 0.0, 0.1, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    f.resize(10);
    CHECK(radial_integral(f, 0.0, 0.1, 3) == doctest::Approx(std::pow(0.9, 3) / 3.0).epsilon(1e-14));
    CHECK(radial_integral(f, 0.0, 0.1, 1) == doctest::Approx(0.9).epsilon(1e-14));
  }
}
