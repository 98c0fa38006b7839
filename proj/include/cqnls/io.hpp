#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cqnls/dynamics.hpp"
#include "cqnls/frequency_curves.hpp"
#include "cqnls/functionals.hpp"
#include "cqnls/landscape.hpp"
#include "cqnls/oracles.hpp"
#include "cqnls/spectra.hpp"

namespace cqnls {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolkitVersion = "1.0.0";
inline constexpr const char* kOutDirEnv = "CQNLS_OUT_DIR";

/// Explicit flag, then $CQNLS_OUT_DIR, then "out".
std::filesystem::path output_directory(const std::optional<std::string>& flag);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t v);

/// Shortest round-trip decimal form ('.' separator, locale independent).
std::string format_number(double v);

using Json = nlohmann::ordered_json;

Json to_json(const FunctionalReport& r);
Json to_json(const SolverInfo& s);
Json to_json(const FrequencyCurvePoint& p);
Json to_json(const FrequencyCurve& c);
Json to_json(const CriticalFrequencies& c);
Json to_json(const ClassificationResult& c);
Json to_json(const LandscapeRecord& r);
Json to_json(const StabilityReport& r);
Json to_json(const LinearizedSpectra& s);
Json to_json(const Quadrature1dReport& r);

FrequencyCurve curve_from_json(const Json& j);
CriticalFrequencies critical_from_json(const Json& j);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

/// CSV columns r, u, u_prime.
void write_profile_csv(const std::filesystem::path& path, const RadialProfile& p);
/// CSV columns omega, mass, energy, beta, d, grad_sq, mass_derivative, stability.
void write_curve_csv(const std::filesystem::path& path, const FrequencyCurve& c);
/// CSV columns m, e_min, e_min_v, achieved, minimizer_kind, count, omega1, omega2.
void write_landscape_csv(const std::filesystem::path& path, const std::vector<LandscapeRecord>& rows);
/// CSV columns t, mass, energy, momentum, distance.
void write_ledger_csv(const std::filesystem::path& path, const std::vector<LedgerEntry>& ledger);

/// Run manifest; the only place wall-clock time is recorded.
struct Manifest {
  std::string command;
  std::string config;  // canonical flat key = value dump of the effective options
  double wall_time_seconds = 0.0;
  std::vector<std::string> outputs;
  std::vector<NodeFailure> failures;
  Json extra = Json::object();
};

Json to_json(const Manifest& m);

}  // namespace cqnls
