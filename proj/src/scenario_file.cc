#include "fdd2d/scenario_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

namespace fdd2d {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseNumber(const std::string& key, std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key, "expected a finite number, got '" +
                               std::string(text) + "'");
  }
  return value;
}

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = {"separation_m",
                               "path_loss_exp",
                               "sir_threshold_db",
                               "sir_threshold_linear",
                               "rate_bps_hz",
                               "geometry.orientation1_deg",
                               "geometry.orientation2_deg"};
    for (const char* p : {"p1.", "p2."}) {
      for (const char* field :
           {"tx_power_dbm", "tx_power_linear", "intra_distance_m",
            "si_attenuation_db", "si_attenuation_linear"}) {
        k.insert(std::string(p) + field);
      }
    }
    return k;
  }();
  return keys;
}

class Fields {
 public:
  explicit Fields(std::map<std::string, double> values)
      : values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double Required(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "missing required key");
    return it->second;
  }

  // Exactly one of a (dB, linear) pair, returned in linear units.
  double Linear(const std::string& db_key, const std::string& linear_key) const {
    const bool db = has(db_key), lin = has(linear_key);
    if (db && lin) {
      throw ConfigError(linear_key, "conflicts with " + db_key);
    }
    if (!db && !lin) {
      throw ConfigError(linear_key, "missing (or give " + db_key + ")");
    }
    if (db) return DbToLinear(values_.at(db_key));
    return values_.at(linear_key);
  }

 private:
  std::map<std::string, double> values_;
};

PairConfig ReadPair(const Fields& f, const std::string& prefix) {
  PairConfig pair;
  pair.tx_power = f.Linear(prefix + "tx_power_dbm", prefix + "tx_power_linear");
  pair.intra_distance = f.Required(prefix + "intra_distance_m");
  pair.si_attenuation =
      f.Linear(prefix + "si_attenuation_db", prefix + "si_attenuation_linear");
  if (!(pair.tx_power > 0.0)) {
    throw ConfigError(prefix + "tx_power", "must be positive");
  }
  if (!(pair.intra_distance > 0.0)) {
    throw ConfigError(prefix + "intra_distance_m", "must be positive");
  }
  if (!(pair.si_attenuation > 0.0)) {
    throw ConfigError(prefix + "si_attenuation", "must be positive");
  }
  return pair;
}

double ReadTheta(const Fields& f) {
  std::vector<std::pair<std::string, double>> sources;
  if (f.has("sir_threshold_linear")) {
    sources.emplace_back("sir_threshold_linear",
                         f.Required("sir_threshold_linear"));
  }
  if (f.has("sir_threshold_db")) {
    sources.emplace_back("sir_threshold_db",
                         DbToLinear(f.Required("sir_threshold_db")));
  }
  if (f.has("rate_bps_hz")) {
    const double rate = f.Required("rate_bps_hz");
    if (rate < 0.0) throw ConfigError("rate_bps_hz", "must be non-negative");
    sources.emplace_back("rate_bps_hz", ThetaFromRate(rate));
  }
  if (sources.empty()) {
    throw ConfigError("sir_threshold_linear",
                      "missing (or give sir_threshold_db / rate_bps_hz)");
  }
  const double theta = sources.front().second;
  for (const auto& [key, value] : sources) {
    if (std::abs(value - theta) >
        kThetaConsistencyTolerance * std::max(std::abs(theta), 1e-300)) {
      throw ConfigError(key, "SIR threshold disagrees with " +
                                 sources.front().first);
    }
  }
  if (!(theta > 0.0)) {
    throw ConfigError(sources.front().first, "SIR threshold must be positive");
  }
  return theta;
}

}  // namespace

ScenarioFile ParseScenarioText(std::string_view text) {
  std::map<std::string, double> values;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) +
                                ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (!KnownKeys().count(key)) throw ConfigError(key, "unknown key");
    if (values.count(key)) throw ConfigError(key, "duplicate key");
    values[key] = ParseNumber(key, Trim(line.substr(eq + 1)));
  }

  const Fields f(std::move(values));
  ScenarioFile out;
  out.scenario.pair1 = ReadPair(f, "p1.");
  out.scenario.pair2 = ReadPair(f, "p2.");
  out.scenario.separation = f.Required("separation_m");
  if (!(out.scenario.separation > 0.0)) {
    throw ConfigError("separation_m", "must be positive");
  }
  out.scenario.path_loss_exp = f.Required("path_loss_exp");
  if (!(out.scenario.path_loss_exp >= 2.0)) {
    throw ConfigError("path_loss_exp", "must be >= 2");
  }
  out.scenario.sir_threshold = ReadTheta(f);

  const bool o1 = f.has("geometry.orientation1_deg");
  const bool o2 = f.has("geometry.orientation2_deg");
  if (o1 || o2) {
    constexpr double kDeg = std::numbers::pi / 180.0;
    Geometry g;
    g.orientation1 = o1 ? f.Required("geometry.orientation1_deg") * kDeg : 0.0;
    g.orientation2 = o2 ? f.Required("geometry.orientation2_deg") * kDeg : 0.0;
    out.geometry = g;
  }
  Validate(out.scenario);
  return out;
}

ScenarioFile LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseScenarioText(buffer.str());
}

}  // namespace fdd2d
