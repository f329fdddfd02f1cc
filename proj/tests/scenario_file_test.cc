#include "fdd2d/scenario_file.h"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

namespace fdd2d {
namespace {

const char* const kBase = R"(# reference pair, theta = 3
p1.tx_power_dbm = 20
p1.intra_distance_m = 10
p1.si_attenuation_db = 50     # trailing comment
p2.tx_power_linear = 100
p2.intra_distance_m = 10
p2.si_attenuation_linear = 1e5

separation_m = 20
path_loss_exp = 4
)";

std::string With(const std::string& extra) {
  return std::string(kBase) + extra + "\n";
}

std::string Without(const std::string& key, const std::string& extra) {
  std::string text = kBase;
  const auto at = text.find(key);
  REQUIRE(at != std::string::npos);
  text.erase(at, text.find('\n', at) - at + 1);
  return text + extra + "\n";
}

std::string ErrorKey(const std::string& text) {
  try {
    ParseScenarioText(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

TEST_CASE("valid file converts units") {
  const ScenarioFile f = ParseScenarioText(With("rate_bps_hz = 2"));
  const Scenario& s = f.scenario;
  // 20 dBm = 100 mW, matching the linear power of pair 2.
  CHECK(s.pair1.tx_power == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(s.pair2.tx_power == 100.0);
  CHECK(s.pair1.si_attenuation == doctest::Approx(1e5).epsilon(1e-12));
  CHECK(s.separation == 20.0);
  CHECK(s.path_loss_exp == 4.0);
  CHECK(s.sir_threshold == 3.0);
  CHECK_FALSE(f.geometry.has_value());

  const DerivedParams p = DeriveParams(s);
  CHECK(p.lambda1 == doctest::Approx(1.0 / 1.3).epsilon(1e-12));
  CHECK(p.mu1 == doctest::Approx(16.0 / 19.0).epsilon(1e-12));
}

TEST_CASE("theta sources") {
  CHECK(ParseScenarioText(With("sir_threshold_linear = 3")).scenario.sir_threshold ==
        3.0);
  CHECK(ParseScenarioText(With("sir_threshold_db = 10")).scenario.sir_threshold ==
        doctest::Approx(10.0).epsilon(1e-12));
  // Consistent duplicates are accepted.
  CHECK(ParseScenarioText(With("rate_bps_hz = 2\nsir_threshold_linear = 3"))
            .scenario.sir_threshold == 3.0);
  // 4.77 dB is 3.0003, not 3: any mismatch beyond 1e-9 relative is rejected.
  std::string key = ErrorKey(With("rate_bps_hz = 2\nsir_threshold_db = 4.77"));
  CHECK((key == "rate_bps_hz" || key == "sir_threshold_db"));
  key = ErrorKey(With("rate_bps_hz = 2\nsir_threshold_linear = 3.001"));
  CHECK((key == "rate_bps_hz" || key == "sir_threshold_linear"));
  CHECK(ErrorKey(kBase) == "sir_threshold_linear");
  CHECK(ErrorKey(With("rate_bps_hz = -1")) == "rate_bps_hz");
  CHECK(ErrorKey(With("sir_threshold_linear = 0")) == "sir_threshold_linear");
}

TEST_CASE("invalid values name the key") {
  CHECK(ErrorKey(Without("separation_m", "separation_m = 0\nrate_bps_hz = 2")) ==
        "separation_m");
  CHECK(ErrorKey(Without("separation_m", "rate_bps_hz = 2")) == "separation_m");
  CHECK(ErrorKey(Without("path_loss_exp", "path_loss_exp = 1.9\nrate_bps_hz = 2")) ==
        "path_loss_exp");
  CHECK(ErrorKey(With("rate_bps_hz = two")) == "rate_bps_hz");
  CHECK(ErrorKey(With("rate_bps_hz = 2 3")) == "rate_bps_hz");
  CHECK(ErrorKey(With("rate_bps_hz = inf")) == "rate_bps_hz");
  CHECK(ErrorKey(With("rate_bps_hz = 2\nnoise_dbm = -90")) == "noise_dbm");
  CHECK(ErrorKey(With("rate_bps_hz = 2\nseparation_m = 30")) == "separation_m");
  CHECK(ErrorKey(With("rate_bps_hz = 2\np1.tx_power_linear = 1")) ==
        "p1.tx_power_linear");
  CHECK(ErrorKey(Without("p2.intra_distance_m",
                         "p2.intra_distance_m = -3\nrate_bps_hz = 2")) ==
        "p2.intra_distance_m");
  CHECK(ErrorKey(With("rate_bps_hz 2")).empty());
}

TEST_CASE("geometry keys") {
  const ScenarioFile f =
      ParseScenarioText(With("rate_bps_hz = 2\ngeometry.orientation2_deg = 90"));
  REQUIRE(f.geometry.has_value());
  CHECK(f.geometry->orientation1 == 0.0);
  CHECK(f.geometry->orientation2 == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(LoadScenarioFile("/nonexistent/scenario.cfg"), ConfigError);
}

}  // namespace
}  // namespace fdd2d
