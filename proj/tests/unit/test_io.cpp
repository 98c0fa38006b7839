#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "cqnls/errors.hpp"
#include "cqnls/io.hpp"
#include "doctest.h"

using namespace cqnls;
namespace fs = std::filesystem;

namespace {

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

fs::path scratch_dir() {
  auto d = fs::temp_directory_path() / "cqnls_io_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("FNV-1a reference vectors") {
    CHECK(hex64(fnv1a("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
    CHECK(hex64(fnv1a("foobar")) == "85944171f73967e8");
  }

  TEST_CASE("numbers round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 189.6821003033262, 1e-300, -2.5e17}) CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  }

  TEST_CASE("output directory precedence") {
    ::unsetenv(kOutDirEnv);
    CHECK(output_directory(std::nullopt) == fs::path("out"));
    ::setenv(kOutDirEnv, "from_env", 1);
    CHECK(output_directory(std::nullopt) == fs::path("from_env"));
    CHECK(output_directory(std::string("flag")) == fs::path("flag"));
    ::unsetenv(kOutDirEnv);
  }

  TEST_CASE("curve JSON round trip") {
    FrequencyCurve c;
    FrequencyCurvePoint p;
    p.omega = 0.05;
    p.mass = 200.125;
    p.beta = 1.0 / 3.0;
    p.mass_derivative = -3.5;
    p.stability = Stability::stable;
    p.slope_agrees = true;
    c.points.push_back(p);
    c.failures.push_back({0.2, "outside"});
    const auto back = curve_from_json(to_json(c));
    REQUIRE(back.points.size() == 1);
    CHECK(back.points[0].mass == p.mass);
    CHECK(back.points[0].beta == p.beta);
    CHECK(*back.points[0].mass_derivative == -3.5);
    CHECK_FALSE(back.points[0].d_second.has_value());
    CHECK(back.points[0].stability == Stability::stable);
    REQUIRE(back.failures.size() == 1);
    CHECK(back.failures[0].message == "outside");
  }

  TEST_CASE("critical JSON round trip") {
    CriticalFrequencies c;
    c.omega_star = 0.023926040727277;
    c.m0 = 189.68;
    c.m_q1 = 240.44;
    const auto back = critical_from_json(to_json(c));
    CHECK(back.omega_star == c.omega_star);
    CHECK(back.m_q1 == c.m_q1);
  }

  TEST_CASE("CSV headers") {
    const auto d = scratch_dir();
    FrequencyCurve c;
    write_curve_csv(d / "curve.csv", c);
    CHECK(first_line(d / "curve.csv") == "omega,mass,energy,beta,d,grad_sq,mass_derivative,stability");
    write_landscape_csv(d / "landscape.csv", {});
    CHECK(first_line(d / "landscape.csv") == "m,e_min,e_min_v,achieved,minimizer_kind,count,omega1,omega2");
    write_ledger_csv(d / "ledger.csv", {});
    CHECK(first_line(d / "ledger.csv") == "t,mass,energy,momentum,distance");
    RadialProfile p;
    p.r = {0.0, 0.5};
    p.u = {1.0, 0.5};
    p.du = {0.0, -1.0};
    write_profile_csv(d / "profile.csv", p);
    CHECK(first_line(d / "profile.csv") == "r,u,u_prime");
  }

  TEST_CASE("manifest carries schema version and config hash") {
    Manifest m;
    m.command = "solve";
    m.config = "omega=0.09\n";
    const auto j = to_json(m);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["toolkit_version"] == std::string(kToolkitVersion));
    CHECK(j["config_hash"] == hex64(fnv1a(m.config)));
  }

  TEST_CASE("missing files are IoErrors") {
    try {
      read_json(scratch_dir() / "does_not_exist.json");
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IoError);
    }
  }
}
