// Command-line front end: solve, scan, critical, classify, landscape,
// evolve, spectra, validate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cqnls/dynamics.hpp"
#include "cqnls/errors.hpp"
#include "cqnls/frequency_curves.hpp"
#include "cqnls/functionals.hpp"
#include "cqnls/io.hpp"
#include "cqnls/landscape.hpp"
#include "cqnls/oracles.hpp"
#include "cqnls/shooting.hpp"
#include "cqnls/soliton_geometry.hpp"
#include "cqnls/spectra.hpp"

namespace fs = std::filesystem;
using namespace cqnls;

namespace {

enum Exit { kOk = 0, kFailedChecks = 1, kOutOfWindow = 2, kSolverFailure = 3 };

struct Common {
  std::optional<std::string> out;
  unsigned workers = 1;
  double ode_tol = 1e-12;
  double bisection_tol = 1e-12;
  std::optional<double> max_radius;
  std::optional<double> grid_spacing;
  double residual_gate = 1e-7;
  int max_doublings = 2;

  ShootingConfig shooting() const {
    ShootingConfig c;
    c.ode_tolerance = ode_tol;
    c.bisection_tolerance = bisection_tol;
    c.max_radius = max_radius;
    c.grid_spacing = grid_spacing;
    c.residual_gate = residual_gate;
    c.max_domain_doublings = max_doublings;
    return c;
  }
  ScanOptions scan_options() const { return {shooting(), workers}; }
};

class Run {
 public:
  Run(std::string command, const CLI::App& app, const Common& common)
      : dir_(output_directory(common.out)), start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.config = app.config_to_str(true, false);
  }

  fs::path path(const std::string& name) {
    manifest_.outputs.push_back(name);
    return dir_ / name;
  }
  const fs::path& dir() const { return dir_; }
  Manifest& manifest() { return manifest_; }

  void finish() {
    manifest_.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write_json(dir_ / "manifest.json", to_json(manifest_));
  }

 private:
  fs::path dir_;
  std::chrono::steady_clock::time_point start_;
  Manifest manifest_;
};

// Curve with derivatives: read from <dir>/curve.json when present, otherwise
// scanned on the default grid and written there.
FrequencyCurve load_or_scan(Run& run, const Common& c, const std::optional<std::string>& curve_file) {
  const fs::path file = curve_file ? fs::path(*curve_file) : run.dir() / "curve.json";
  if (fs::exists(file)) return curve_from_json(read_json(file));
  if (curve_file) throw Error(ErrorCode::IoError, "curve file " + file.string() + " does not exist");
  auto curve = differentiate(scan(default_scan_grid(), c.scan_options()), c.scan_options());
  write_json(run.path("curve.json"), to_json(curve));
  write_curve_csv(run.path("curve.csv"), curve);
  run.manifest().failures = curve.failures;
  return curve;
}

CriticalFrequencies load_or_locate(Run& run, const Common& c, const FrequencyCurve& curve) {
  const fs::path file = run.dir() / "critical.json";
  if (fs::exists(file)) return critical_from_json(read_json(file));
  auto crit = locate_critical(curve, c.shooting());
  write_json(run.path("critical.json"), to_json(crit));
  return crit;
}

int cmd_solve(const CLI::App& app, const Common& c, double omega) {
  Run run("solve", app, c);
  const auto p = solve_ground_state(Frequency(omega), c.shooting());
  const auto rep = evaluate(p);
  write_profile_csv(run.path("profile.csv"), p);
  Json j{{"schema_version", kSchemaVersion},
         {"omega", omega},
         {"amplitude", p.amplitude},
         {"tail_constant", p.tail_constant},
         {"decay_rate", p.decay_rate},
         {"truncation_radius", p.truncation_radius},
         {"grid_spacing", p.spacing()},
         {"d", d_scalar(p)},
         {"functionals", to_json(rep)}};
  if (p.info) j["solver"] = to_json(*p.info);
  write_json(run.path("report.json"), j);
  run.finish();
  std::printf("omega = %s  amplitude = %s  mass = %s  energy = %s  beta = %s\n", format_number(omega).c_str(),
              format_number(p.amplitude).c_str(), format_number(rep.mass).c_str(), format_number(rep.energy).c_str(),
              format_number(rep.beta).c_str());
  return kOk;
}

int cmd_scan(const CLI::App& app, const Common& c, std::size_t n, double lo, double hi,
             const std::vector<double>& omegas, bool derivatives) {
  Run run("scan", app, c);
  auto grid = omegas.empty() ? default_scan_grid(n, lo, hi) : omegas;
  auto curve = scan(grid, c.scan_options());
  if (derivatives && curve.points.size() >= 5) curve = differentiate(curve, c.scan_options());
  write_json(run.path("curve.json"), to_json(curve));
  write_curve_csv(run.path("curve.csv"), curve);
  run.manifest().failures = curve.failures;
  run.finish();
  std::printf("%zu points solved, %zu failures\n", curve.points.size(), curve.failures.size());
  for (const auto& f : curve.failures) std::printf("  omega = %s: %s\n", format_number(f.omega).c_str(), f.message.c_str());
  return curve.points.empty() ? kSolverFailure : kOk;
}

int cmd_critical(const CLI::App& app, const Common& c, const std::optional<std::string>& curve_file) {
  Run run("critical", app, c);
  const auto curve = load_or_scan(run, c, curve_file);
  const auto crit = locate_critical(curve, c.shooting());
  write_json(run.path("critical.json"), to_json(crit));
  const auto labelled = classify_stability(curve, crit);
  write_curve_csv(run.path("stability.csv"), labelled);
  write_json(run.path("stability.json"), to_json(labelled));
  run.finish();
  std::printf("omega_star = %s (beta = %s)\nomega_upper_star = %s (beta = %s)\nm0 = %s  M(Q1) = %s  threshold = %s\n",
              format_number(crit.omega_star).c_str(), format_number(crit.beta_at_star).c_str(),
              format_number(crit.omega_upper_star).c_str(), format_number(crit.beta_at_upper_star).c_str(),
              format_number(crit.m0).c_str(), format_number(crit.m_q1).c_str(), format_number(crit.m_threshold).c_str());
  return kOk;
}

int cmd_classify(const CLI::App& app, const Common& c, std::optional<double> mass, std::optional<double> ratio,
                 const std::optional<std::string>& curve_file) {
  Run run("classify", app, c);
  const auto curve = load_or_scan(run, c, curve_file);
  const auto crit = load_or_locate(run, c, curve);
  const double m = mass ? *mass : *ratio * crit.m0;
  LandscapeOptions opt;
  opt.shooting = c.shooting();
  const auto res = classify_normalized(m, curve, crit, opt);
  write_json(run.path("classification.json"), to_json(res));
  run.finish();
  std::printf("m = %s (m0 = %s): %d positive normalized solution(s)\n", format_number(m).c_str(),
              format_number(crit.m0).c_str(), res.count);
  for (std::size_t i = 0; i < res.frequencies.size(); ++i)
    std::printf("  omega = %s  %s  %s\n", format_number(res.frequencies[i]).c_str(),
                std::string(to_string(res.branch_labels[i])).c_str(),
                std::string(to_string(res.stability_labels[i])).c_str());
  return kOk;
}

int cmd_landscape(const CLI::App& app, const Common& c, std::vector<double> masses, bool certify,
                  const std::optional<std::string>& curve_file) {
  Run run("landscape", app, c);
  const auto curve = load_or_scan(run, c, curve_file);
  const auto crit = load_or_locate(run, c, curve);
  if (masses.empty()) masses = landscape_mass_grid(crit);
  LandscapeOptions opt;
  opt.shooting = c.shooting();
  std::vector<LandscapeRecord> rows;
  Json all = Json::array();
  for (double m : masses) {
    rows.push_back(e_min_landscape(m, curve, crit, opt));
    Json j = to_json(rows.back());
    if (certify && m >= crit.m_q1 * (1.0 - opt.mass_tolerance)) {
      const auto cert = certify_e_min_by_flow(m, {}, c.workers);
      j["flow_energy"] = cert.energy;
      j["flow_frequency"] = cert.frequency;
    }
    all.push_back(j);
  }
  write_landscape_csv(run.path("landscape.csv"), rows);
  write_json(run.path("landscape.json"), Json{{"schema_version", kSchemaVersion}, {"rows", all}});
  run.finish();
  for (const auto& r : rows)
    std::printf("m = %-12s %-22s %s\n", format_number(r.mass).c_str(), std::string(to_string(r.regime)).c_str(),
                std::string(to_string(r.minimizer_kind)).c_str());
  return kOk;
}

int cmd_evolve(const CLI::App& app, const Common& c, double omega, double size, double t_end, double dt, double dr,
               double radius, double interval) {
  Run run("evolve", app, c);
  StabilityConfig cfg;
  cfg.evolve.dt = dt;
  cfg.dr = dr;
  cfg.radius = radius;
  cfg.sample_interval = interval;
  cfg.shooting = c.shooting();
  const auto rep = stability_experiment(Frequency(omega), size, t_end, cfg);
  write_ledger_csv(run.path("ledger.csv"), rep.ledger);
  Json j = to_json(rep);
  j["ledger"] = "ledger.csv";
  write_json(run.path("experiment.json"), j);
  run.finish();
  std::printf("omega = %s  size = %s  max distance = %s  growth = %s  %s\n", format_number(omega).c_str(),
              format_number(size).c_str(), format_number(rep.max_modulated_distance).c_str(),
              format_number(rep.growth_ratio).c_str(), std::string(to_string(rep.verdict)).c_str());
  return kOk;
}

int cmd_spectra(const CLI::App& app, const Common& c, const std::vector<double>& omegas, int n_eigs, double dr) {
  Run run("spectra", app, c);
  Json all = Json::array();
  SpectraConfig cfg;
  cfg.dr = dr;
  for (double w : omegas) {
    const auto s = linearized_spectra(solve_ground_state(Frequency(w), c.shooting()), n_eigs, cfg);
    all.push_back(to_json(s));
    std::printf("omega = %s  L+ negative = %d  lowest L+ = %s  lowest L- = %s\n", format_number(w).c_str(),
                s.lplus_negative, format_number(s.lplus.front()).c_str(), format_number(s.lminus.front()).c_str());
  }
  write_json(run.path("spectra.json"), Json{{"schema_version", kSchemaVersion}, {"spectra", all}});
  run.finish();
  return kOk;
}

struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int cmd_validate(const CLI::App& app, const Common& c) {
  Run run("validate", app, c);
  const auto cfg = c.shooting();
  std::vector<Check> checks{
      {"soliton_1d ODE residual < 1e-8",
       [] {
         double worst = 0.0;
         const double w = 0.1, h = 1e-3;
         for (double x : {0.0, 0.5, 1.5, 3.0, 6.0}) {
           auto f = [&](double y) { return soliton_1d(w, y); };
           const double d2 = (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
           const double u = f(x);
           worst = std::max(worst, std::abs(-d2 + w * u - u * u * u + u * u * u * u * u));
         }
         return std::pair{worst < 1e-8, sci(worst)};
       }},
      {"1D quadrature vs Gauss-Kronrod < 1e-10",
       [] {
         const double e = std::max(validate_quadrature_1d(0.1).max_relative_error,
                                   validate_quadrature_1d(0.05).max_relative_error);
         return std::pair{e < 1e-10, sci(e)};
       }},
      {"1D Nehari identity < 1e-9",
       [] {
         const double e = std::abs(validate_quadrature_1d(0.1).nehari_residual);
         return std::pair{e < 1e-9, sci(e)};
       }},
      {"Gaussian mass (pi/2)^(3/2) < 1e-10",
       [] {
         auto g = sample_profile([](double r) { return std::exp(-r * r); },
                                 [](double r) { return -2.0 * r * std::exp(-r * r); }, 12.0, 4800);
         const double ref = std::pow(std::numbers::pi / 2.0, 1.5);
         const double e = std::abs(evaluate(g).mass - ref) / ref;
         return std::pair{e < 1e-10, sci(e)};
       }},
      {"ground-state residuals < 1e-7",
       [cfg] {
         double worst = 0.0;
         for (double w : {0.01, 0.05, 0.09, 0.15, 0.18}) {
           const auto r = evaluate(solve_ground_state(Frequency(w), cfg));
           worst = std::max({worst, std::abs(r.nehari_residual), std::abs(r.pohozaev_residual)});
         }
         return std::pair{worst < 1e-7, sci(worst)};
       }},
      {"cubic reference residuals < 1e-7",
       [cfg] {
         const auto r = evaluate(solve_cubic_reference(cfg));
         const double e = std::max(std::abs(r.nehari_residual), std::abs(r.pohozaev_residual));
         return std::pair{e < 1e-7, sci(e)};
       }},
      {"rescaled soliton beta = 1/3, V = 0, mass formula",
       [cfg] {
         const auto p = solve_ground_state(Frequency(0.09), cfg);
         const auto rp = evaluate(p);
         const auto rr = evaluate(rescale_soliton(p));
         const double e = std::max({std::abs(rr.beta - 1.0 / 3.0), std::abs(rr.pohozaev) / rr.grad_sq,
                                    std::abs(rr.mass - rescaled_mass_formula(rp.beta, rp.mass)) / rr.mass});
         return std::pair{e < 1e-8, sci(e)};
       }},
      {"L- kernel and one negative L+ eigenvalue",
       [cfg] {
         const auto s = linearized_spectra(solve_ground_state(Frequency(0.09), cfg), 2);
         const double e = std::max(s.lminus_residual, std::abs(s.lminus.front()));
         return std::pair{e < 1e-6 && s.lplus_negative == 1, sci(e) + ", negative L+ = " + std::to_string(s.lplus_negative)};
       }},
      {"omega outside (0, 3/16) rejected",
       [cfg] {
         try {
           solve_ground_state(Frequency(0.2), cfg);
         } catch (const Error& e) {
           return std::pair{e.code() == ErrorCode::FrequencyOutOfWindow, std::string(to_string(e.code()))};
         }
         return std::pair{false, std::string("no error")};
       }},
  };
  Json table = Json::array();
  bool all = true;
  for (const auto& chk : checks) {
    bool ok = false;
    std::string detail;
    try {
      std::tie(ok, detail) = chk.run();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    all = all && ok;
    std::printf("%s  %-50s %s\n", ok ? "PASS" : "FAIL", chk.name.c_str(), detail.c_str());
    table.push_back(Json{{"check", chk.name}, {"pass", ok}, {"detail", detail}});
  }
  write_json(run.path("validate.json"), Json{{"schema_version", kSchemaVersion}, {"checks", table}});
  run.finish();
  return all ? kOk : kFailedChecks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground states, frequency curves and stability of the radial cubic-quintic NLS"};
  app.set_config("--config", "", "Flat key = value configuration file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  Common c;
  app.add_option("--out", c.out, "Output directory (default: $CQNLS_OUT_DIR or ./out)");
  app.add_option("--workers", c.workers, "Worker threads for independent solves")->check(CLI::PositiveNumber);
  app.add_option("--ode-tol", c.ode_tol, "ODE integration tolerance")->check(CLI::PositiveNumber);
  app.add_option("--bisection-tol", c.bisection_tol, "Amplitude bisection tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-radius", c.max_radius, "Truncation radius (default max(40/sqrt(omega), 60))");
  app.add_option("--grid-spacing", c.grid_spacing, "Output grid spacing (default min(0.01/sqrt(omega), 0.02))");
  app.add_option("--residual-gate", c.residual_gate, "Maximum Nehari/Pohozaev residual");
  app.add_option("--max-doublings", c.max_doublings, "Domain doublings allowed when the tail is not resolved");

  auto* solve = app.add_subcommand("solve", "Ground state and functionals at one frequency");
  double omega = 0.0;
  solve->add_option("--omega", omega, "Frequency in (0, 3/16)")->required();

  auto* scan_cmd = app.add_subcommand("scan", "Frequency sweep with derivative stencils");
  std::size_t n = 60;
  double lo = 0.004, hi = 0.185;
  std::vector<double> omegas;
  bool no_derivatives = false;
  scan_cmd->add_option("--n", n, "Number of grid nodes");
  scan_cmd->add_option("--lo", lo, "Lowest frequency");
  scan_cmd->add_option("--hi", hi, "Highest frequency");
  scan_cmd->add_option("--omegas", omegas, "Explicit frequency list (overrides --n/--lo/--hi)");
  scan_cmd->add_flag("--no-derivatives", no_derivatives, "Skip the derivative stencils");

  std::optional<std::string> curve_file;
  auto* critical = app.add_subcommand("critical", "omega_star, omega^star, m0, M(Q1) and stability labels");
  critical->add_option("--curve", curve_file, "curve.json from a previous scan (default: <out>/curve.json)");

  auto* classify = app.add_subcommand("classify", "Positive normalized solutions of a prescribed mass");
  std::optional<double> mass, ratio;
  auto* mass_opt = classify->add_option("--mass", mass, "Prescribed mass");
  auto* ratio_opt = classify->add_option("--mass-ratio", ratio, "Prescribed mass relative to m0");
  mass_opt->excludes(ratio_opt);
  classify->add_option("--curve", curve_file, "curve.json from a previous scan");

  auto* landscape = app.add_subcommand("landscape", "E_min and E_min^V over a mass grid");
  std::vector<double> masses;
  bool certify = false;
  landscape->add_option("--masses", masses, "Masses (default: twenty covering all regimes)");
  landscape->add_flag("--certify", certify, "Certify achieved minima with the gradient flow");
  landscape->add_option("--curve", curve_file, "curve.json from a previous scan");

  auto* evolve_cmd = app.add_subcommand("evolve", "Perturbed-soliton stability experiment");
  double size = 0.01, t_end = 100.0, dt = 0.01, dr = 0.05, radius = 0.0, interval = 0.5;
  evolve_cmd->add_option("--omega", omega, "Frequency in (0, 3/16)")->required();
  evolve_cmd->add_option("--size", size, "Perturbation size in [0, 0.05]");
  evolve_cmd->add_option("--t-end", t_end, "Final time");
  evolve_cmd->add_option("--dt", dt, "Time step");
  evolve_cmd->add_option("--dr", dr, "Radial spacing");
  evolve_cmd->add_option("--radius", radius, "Domain radius (default: twice the soliton truncation radius)");
  evolve_cmd->add_option("--sample-interval", interval, "Time between ledger samples");

  auto* spectra = app.add_subcommand("spectra", "Lowest radial eigenvalues of L+ and L-");
  std::vector<double> spectra_omegas;
  int n_eigs = 3;
  double spectra_dr = 0.05;
  spectra->add_option("--omega", spectra_omegas, "Frequencies")->required();
  spectra->add_option("--n-eigs", n_eigs, "Eigenvalues per operator")->check(CLI::PositiveNumber);
  spectra->add_option("--dr", spectra_dr, "Radial spacing");

  auto* validate = app.add_subcommand("validate", "Invariant battery with a pass/fail table");

  CLI11_PARSE(app, argc, argv);
  if (classify->parsed() && !mass && !ratio) {
    std::cerr << "classify: one of --mass or --mass-ratio is required\n";
    return kFailedChecks;
  }

  try {
    if (solve->parsed()) return cmd_solve(app, c, omega);
    if (scan_cmd->parsed()) return cmd_scan(app, c, n, lo, hi, omegas, !no_derivatives);
    if (critical->parsed()) return cmd_critical(app, c, curve_file);
    if (classify->parsed()) return cmd_classify(app, c, mass, ratio, curve_file);
    if (landscape->parsed()) return cmd_landscape(app, c, masses, certify, curve_file);
    if (evolve_cmd->parsed()) return cmd_evolve(app, c, omega, size, t_end, dt, dr, radius, interval);
    if (spectra->parsed()) return cmd_spectra(app, c, spectra_omegas, n_eigs, spectra_dr);
    if (validate->parsed()) return cmd_validate(app, c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::FrequencyOutOfWindow) return kOutOfWindow;
    if (e.code() == ErrorCode::IoError || e.code() == ErrorCode::InvalidArgument) return kFailedChecks;
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}
