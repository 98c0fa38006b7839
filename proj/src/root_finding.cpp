#include "cqnls/root_finding.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <optional>

#include "cqnls/errors.hpp"
#include "cqnls/shooting.hpp"

namespace cqnls {

namespace {
struct Found {};
}  // namespace

FrequencyRoot solve_for_frequency(const ProfileScalar& g, double target, double lo, double hi,
                                  const ShootingConfig& cfg, double value_tol, double omega_tol) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "empty frequency bracket");
  FrequencyRoot best;
  double best_gap = INFINITY;
  auto f = [&](double omega) {
    auto p = solve_ground_state(Frequency(omega), cfg);
    auto rep = evaluate(p);
    const double v = g(p, rep);
    ++best.solves;
    const double gap = v - target;
    if (std::abs(gap) < best_gap) {
      best_gap = std::abs(gap);
      best.omega = omega;
      best.profile = std::move(p);
      best.report = rep;
      best.value = v;
    }
    if (std::abs(gap) <= value_tol) throw Found{};
    return gap;
  };
  try {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo * fhi > 0.0)
      throw Error(ErrorCode::TargetNotBracketed, "target " + fmt_num(target) + " not bracketed on [" +
                                                     fmt_num(lo) + ", " + fmt_num(hi) + "]");
    std::uintmax_t iters = 100;
    auto stop = [omega_tol](double a, double b) { return std::abs(b - a) <= omega_tol; };
    const auto br = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
    f(0.5 * (br.first + br.second));
  } catch (const Found&) {
  }
  return best;
}

}  // namespace cqnls
