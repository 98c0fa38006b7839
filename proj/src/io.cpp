#include "cqnls/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cqnls/errors.hpp"

namespace cqnls {

namespace fs = std::filesystem;

fs::path output_directory(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "out";
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double from_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return std::strtod(j.get<std::string>().c_str(), nullptr);
  return std::nan("");
}

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

std::optional<double> read_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return from_number(j.at(key));
}

Stability stability_from(const std::string& s) {
  if (s == "stable") return Stability::stable;
  if (s == "unstable") return Stability::unstable;
  if (s == "critical") return Stability::critical;
  return Stability::unclassified;
}

}  // namespace

Json to_json(const FunctionalReport& r) {
  return Json{{"mass", number(r.mass)},
              {"energy", number(r.energy)},
              {"pohozaev", number(r.pohozaev)},
              {"beta", number(r.beta)},
              {"grad_sq", number(r.grad_sq)},
              {"l4", number(r.l4)},
              {"l6", number(r.l6)},
              {"nehari_residual", number(r.nehari_residual)},
              {"pohozaev_residual", number(r.pohozaev_residual)}};
}

Json to_json(const SolverInfo& s) {
  return Json{{"initial_guess", s.initial_guess},
              {"bisection_steps", s.bisection_steps},
              {"newton_iterations", s.newton_iterations},
              {"domain_doublings", s.domain_doublings},
              {"bracket", {number(s.bracket_lo), number(s.bracket_hi)}},
              {"tail_mismatch", number(s.tail_mismatch)},
              {"matching_window", {number(s.matching_window.first), number(s.matching_window.second)}}};
}

Json to_json(const FrequencyCurvePoint& p) {
  Json j{{"omega", number(p.omega)},
         {"mass", number(p.mass)},
         {"energy", number(p.energy)},
         {"beta", number(p.beta)},
         {"d", number(p.d_value)},
         {"grad_sq", number(p.grad_sq)},
         {"l4", number(p.l4)},
         {"l6", number(p.l6)},
         {"nehari_residual", number(p.nehari_residual)},
         {"pohozaev_residual", number(p.pohozaev_residual)},
         {"amplitude", number(p.amplitude)},
         {"truncation_radius", number(p.truncation_radius)},
         {"grid_spacing", number(p.grid_spacing)},
         {"rescaled_mass", number(p.rescaled_mass)},
         {"rescaled_energy", number(p.rescaled_energy)},
         {"rescaled_beta", number(p.rescaled_beta)},
         {"rescaled_pohozaev", number(p.rescaled_pohozaev)},
         {"mass_derivative", optional_number(p.mass_derivative)},
         {"grad_derivative", optional_number(p.grad_derivative)},
         {"energy_derivative", optional_number(p.energy_derivative)},
         {"d_second", optional_number(p.d_second)},
         {"grad_identity_error", optional_number(p.grad_identity_error)},
         {"energy_identity_error", optional_number(p.energy_identity_error)},
         {"d_second_error", optional_number(p.d_second_error)},
         {"stability", std::string(to_string(p.stability))}};
  j["slope_agrees"] = p.slope_agrees ? Json(*p.slope_agrees) : Json(nullptr);
  return j;
}

Json to_json(const FrequencyCurve& c) {
  Json pts = Json::array(), fails = Json::array();
  for (const auto& p : c.points) pts.push_back(to_json(p));
  for (const auto& f : c.failures) fails.push_back(Json{{"omega", number(f.omega)}, {"message", f.message}});
  return Json{{"schema_version", kSchemaVersion}, {"points", pts}, {"failures", fails}};
}

FrequencyCurve curve_from_json(const Json& j) {
  FrequencyCurve c;
  try {
    for (const auto& q : j.at("points")) {
      FrequencyCurvePoint p;
      p.omega = from_number(q.at("omega"));
      p.mass = from_number(q.at("mass"));
      p.energy = from_number(q.at("energy"));
      p.beta = from_number(q.at("beta"));
      p.d_value = from_number(q.at("d"));
      p.grad_sq = from_number(q.at("grad_sq"));
      p.l4 = from_number(q.at("l4"));
      p.l6 = from_number(q.at("l6"));
      p.nehari_residual = from_number(q.at("nehari_residual"));
      p.pohozaev_residual = from_number(q.at("pohozaev_residual"));
      p.amplitude = from_number(q.at("amplitude"));
      p.truncation_radius = from_number(q.at("truncation_radius"));
      p.grid_spacing = from_number(q.at("grid_spacing"));
      p.rescaled_mass = from_number(q.at("rescaled_mass"));
      p.rescaled_energy = from_number(q.at("rescaled_energy"));
      p.rescaled_beta = from_number(q.at("rescaled_beta"));
      p.rescaled_pohozaev = from_number(q.at("rescaled_pohozaev"));
      p.mass_derivative = read_optional(q, "mass_derivative");
      p.grad_derivative = read_optional(q, "grad_derivative");
      p.energy_derivative = read_optional(q, "energy_derivative");
      p.d_second = read_optional(q, "d_second");
      p.grad_identity_error = read_optional(q, "grad_identity_error");
      p.energy_identity_error = read_optional(q, "energy_identity_error");
      p.d_second_error = read_optional(q, "d_second_error");
      p.stability = stability_from(q.at("stability").get<std::string>());
      if (q.contains("slope_agrees") && q.at("slope_agrees").is_boolean()) p.slope_agrees = q.at("slope_agrees").get<bool>();
      c.points.push_back(std::move(p));
    }
    if (j.contains("failures"))
      for (const auto& f : j.at("failures"))
        c.failures.push_back({from_number(f.at("omega")), f.at("message").get<std::string>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("malformed curve document: ") + e.what());
  }
  return c;
}

Json to_json(const CriticalFrequencies& c) {
  return Json{{"schema_version", kSchemaVersion},
              {"omega_star", number(c.omega_star)},
              {"omega_upper_star", number(c.omega_upper_star)},
              {"beta_at_star", number(c.beta_at_star)},
              {"beta_at_upper_star", number(c.beta_at_upper_star)},
              {"m0", number(c.m0)},
              {"m_q1", number(c.m_q1)},
              {"m_threshold", number(c.m_threshold)},
              {"mass_argmin", number(c.mass_argmin)},
              {"argmin_spacing", number(c.argmin_spacing)},
              {"solves", c.solves}};
}

CriticalFrequencies critical_from_json(const Json& j) {
  CriticalFrequencies c;
  try {
    c.omega_star = from_number(j.at("omega_star"));
    c.omega_upper_star = from_number(j.at("omega_upper_star"));
    c.beta_at_star = from_number(j.at("beta_at_star"));
    c.beta_at_upper_star = from_number(j.at("beta_at_upper_star"));
    c.m0 = from_number(j.at("m0"));
    c.m_q1 = from_number(j.at("m_q1"));
    c.m_threshold = from_number(j.at("m_threshold"));
    c.mass_argmin = from_number(j.at("mass_argmin"));
    c.argmin_spacing = from_number(j.at("argmin_spacing"));
    c.solves = j.value("solves", 0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("malformed critical document: ") + e.what());
  }
  return c;
}

Json to_json(const ClassificationResult& c) {
  Json sols = Json::array();
  for (std::size_t i = 0; i < c.frequencies.size(); ++i)
    sols.push_back(Json{{"omega", number(c.frequencies[i])},
                        {"branch", std::string(to_string(c.branch_labels[i]))},
                        {"stability", std::string(to_string(c.stability_labels[i]))},
                        {"mass", number(c.masses[i])}});
  return Json{{"schema_version", kSchemaVersion},
              {"prescribed_mass", number(c.prescribed_mass)},
              {"count", c.count},
              {"solutions", sols}};
}

Json to_json(const LandscapeRecord& r) {
  auto ext = [](const ExtendedReal& x) { return x.is_infinite() ? Json("inf") : number(x.value()); };
  Json rs = Json::array();
  for (std::size_t i = 0; i < r.rescaled_omegas.size(); ++i)
    rs.push_back(Json{{"omega", number(r.rescaled_omegas[i])}, {"energy", number(r.rescaled_energies[i])}});
  return Json{{"mass", number(r.mass)},
              {"regime", std::string(to_string(r.regime))},
              {"e_min", ext(r.e_min)},
              {"e_min_achieved", r.e_min_achieved},
              {"e_min_v", ext(r.e_min_v)},
              {"e_min_v_achieved", r.e_min_v_achieved},
              {"minimizer_kind", std::string(to_string(r.minimizer_kind))},
              {"minimizer_omega", number(r.minimizer_omega)},
              {"normalized", to_json(r.normalized)},
              {"rescaled_solitons", rs}};
}

Json to_json(const StabilityReport& r) {
  return Json{{"schema_version", kSchemaVersion},
              {"omega", number(r.omega)},
              {"perturbation_size", number(r.perturbation_size)},
              {"t_end", number(r.t_end)},
              {"dt", number(r.dt)},
              {"verdict", std::string(to_string(r.verdict))},
              {"initial_distance", number(r.initial_distance)},
              {"max_modulated_distance", number(r.max_modulated_distance)},
              {"growth_ratio", number(r.growth_ratio)},
              {"stable_factor", number(r.stable_factor)},
              {"unstable_factor", number(r.unstable_factor)}};
}

Json to_json(const LinearizedSpectra& s) {
  Json lp = Json::array(), lm = Json::array();
  for (double v : s.lplus) lp.push_back(number(v));
  for (double v : s.lminus) lm.push_back(number(v));
  return Json{{"omega", number(s.omega)},
              {"lplus_eigs", lp},
              {"lminus_eigs", lm},
              {"lplus_negative_count", s.lplus_negative},
              {"lplus_gap", number(s.lplus_gap)},
              {"lminus_residual", number(s.lminus_residual)}};
}

Json to_json(const Quadrature1dReport& r) {
  return Json{{"omega", number(r.omega)},
              {"spacing", number(r.spacing)},
              {"mass", number(r.mass)},
              {"mass_reference", number(r.mass_reference)},
              {"grad_sq", number(r.grad_sq)},
              {"grad_sq_reference", number(r.grad_sq_reference)},
              {"l4", number(r.l4)},
              {"l4_reference", number(r.l4_reference)},
              {"l6", number(r.l6)},
              {"l6_reference", number(r.l6_reference)},
              {"max_relative_error", number(r.max_relative_error)},
              {"nehari_residual", number(r.nehari_residual)}};
}

Json to_json(const Manifest& m) {
  Json fails = Json::array();
  for (const auto& f : m.failures) fails.push_back(Json{{"omega", number(f.omega)}, {"message", f.message}});
  Json j{{"schema_version", kSchemaVersion},
         {"toolkit_version", std::string(kToolkitVersion)},
         {"command", m.command},
         {"config_hash", hex64(fnv1a(m.config))},
         {"config", m.config},
         {"wall_time_seconds", m.wall_time_seconds},
         {"outputs", m.outputs},
         {"failures", fails}};
  for (const auto& [k, v] : m.extra.items()) j[k] = v;
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, path.string() + ": " + e.what());
  }
}

void write_profile_csv(const fs::path& path, const RadialProfile& p) {
  std::ostringstream s;
  s << "r,u,u_prime\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    s << format_number(p.r[i]) << ',' << format_number(p.u[i]) << ',' << format_number(p.du[i]) << '\n';
  write_text(path, s.str());
}

void write_curve_csv(const fs::path& path, const FrequencyCurve& c) {
  std::ostringstream s;
  s << "omega,mass,energy,beta,d,grad_sq,mass_derivative,stability\n";
  for (const auto& p : c.points)
    s << format_number(p.omega) << ',' << format_number(p.mass) << ',' << format_number(p.energy) << ','
      << format_number(p.beta) << ',' << format_number(p.d_value) << ',' << format_number(p.grad_sq) << ','
      << (p.mass_derivative ? format_number(*p.mass_derivative) : "") << ',' << to_string(p.stability) << '\n';
  write_text(path, s.str());
}

void write_landscape_csv(const fs::path& path, const std::vector<LandscapeRecord>& rows) {
  std::ostringstream s;
  s << "m,e_min,e_min_v,achieved,minimizer_kind,count,omega1,omega2\n";
  auto ext = [](const ExtendedReal& x) { return x.is_infinite() ? std::string("inf") : format_number(x.value()); };
  for (const auto& r : rows) {
    const auto& f = r.normalized.frequencies;
    s << format_number(r.mass) << ',' << ext(r.e_min) << ',' << ext(r.e_min_v) << ','
      << (r.e_min_achieved ? "true" : "false") << ',' << to_string(r.minimizer_kind) << ',' << r.normalized.count
      << ',' << (f.size() > 0 ? format_number(f[0]) : "") << ',' << (f.size() > 1 ? format_number(f[1]) : "")
      << '\n';
  }
  write_text(path, s.str());
}

void write_ledger_csv(const fs::path& path, const std::vector<LedgerEntry>& ledger) {
  std::ostringstream s;
  s << "t,mass,energy,momentum,distance\n";
  for (const auto& e : ledger)
    s << format_number(e.time) << ',' << format_number(e.mass) << ',' << format_number(e.energy) << ','
      << format_number(e.momentum) << ',' << format_number(e.distance) << '\n';
  write_text(path, s.str());
}

}  // namespace cqnls
