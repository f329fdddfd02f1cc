#ifndef FDD2D_SCENARIO_FILE_H_
#define FDD2D_SCENARIO_FILE_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "fdd2d/channel_model.h"
#include "fdd2d/montecarlo.h"

// Flat `key = value` scenario configuration. `#` starts a comment. Keys:
//
//   p1.tx_power_dbm        | p1.tx_power_linear
//   p1.intra_distance_m
//   p1.si_attenuation_db   | p1.si_attenuation_linear
//   (same for p2)
//   separation_m
//   path_loss_exp
//   sir_threshold_db | sir_threshold_linear | rate_bps_hz
//   geometry.orientation1_deg, geometry.orientation2_deg   (optional)
//
// Only power ratios matter, so dBm is converted to linear milliwatts.
// Several SIR threshold sources may be given only if they agree to a
// relative 1e-9.

namespace fdd2d {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}

  // Offending key, empty for errors not tied to a single key.
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ScenarioFile {
  Scenario scenario;
  std::optional<Geometry> geometry;
};

inline constexpr double kThetaConsistencyTolerance = 1e-9;

ScenarioFile ParseScenarioText(std::string_view text);
ScenarioFile LoadScenarioFile(const std::string& path);

}  // namespace fdd2d

#endif  // FDD2D_SCENARIO_FILE_H_
