#include "fdd2d/channel_model.h"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fdd2d {
namespace {

bool PositiveFinite(double x) { return std::isfinite(x) && x > 0.0; }

void CheckUnitInterval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " +
                            std::to_string(value));
  }
}

}  // namespace

std::string_view ModeName(TransmissionMode mode) {
  switch (mode) {
    case TransmissionMode::kIdle:
      return "Idle";
    case TransmissionMode::kHD:
      return "HD";
    case TransmissionMode::kFD:
      return "FD";
  }
  return "?";
}

TransmissionMode ParseMode(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "idle") return TransmissionMode::kIdle;
  if (lower == "hd") return TransmissionMode::kHD;
  if (lower == "fd") return TransmissionMode::kFD;
  throw std::invalid_argument("unknown transmission mode '" +
                              std::string(name) + "'");
}

void Validate(const PairConfig& pair, std::string_view label) {
  const std::string prefix(label);
  if (!PositiveFinite(pair.tx_power)) {
    throw std::invalid_argument(prefix + ".tx_power must be positive");
  }
  if (!PositiveFinite(pair.intra_distance)) {
    throw std::invalid_argument(prefix + ".intra_distance must be positive");
  }
  if (!PositiveFinite(pair.si_attenuation)) {
    throw std::invalid_argument(prefix + ".si_attenuation must be positive");
  }
}

void Validate(const Scenario& scenario) {
  Validate(scenario.pair1, "p1");
  Validate(scenario.pair2, "p2");
  if (!PositiveFinite(scenario.separation)) {
    throw std::invalid_argument("separation must be positive");
  }
  if (!(std::isfinite(scenario.path_loss_exp) &&
        scenario.path_loss_exp >= 2.0)) {
    throw std::invalid_argument("path_loss_exp must be >= 2");
  }
  if (!PositiveFinite(scenario.sir_threshold)) {
    throw std::invalid_argument("sir_threshold must be positive");
  }
}

DerivedParams ParamsFromAbstract(double lambda1, double mu1, double lambda2,
                                 double mu2) {
  CheckUnitInterval(lambda1, "lambda1");
  CheckUnitInterval(lambda2, "lambda2");
  CheckUnitInterval(mu1, "mu1");
  CheckUnitInterval(mu2, "mu2");
  auto tau = [](double mu) {
    return mu > 0.0 ? 1.0 / mu - 1.0 : std::numeric_limits<double>::infinity();
  };
  return DerivedParams{lambda1, lambda2, mu1, mu2, tau(mu1), tau(mu2)};
}

double ThetaFromRate(double rate) {
  if (!(std::isfinite(rate) && rate >= 0.0)) {
    throw std::domain_error("rate must be a finite non-negative number");
  }
  return std::exp2(rate) - 1.0;
}

double RateFromTheta(double theta) {
  if (!(std::isfinite(theta) && theta >= 0.0)) {
    throw std::domain_error("theta must be a finite non-negative number");
  }
  return std::log2(1.0 + theta);
}

double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

double LinearToDb(double linear) { return 10.0 * std::log10(linear); }

double SelfInterferenceFactor(double sir_threshold, double intra_distance,
                              double path_loss_exp, double si_attenuation) {
  return 1.0 / (1.0 + sir_threshold *
                          std::pow(intra_distance, path_loss_exp) /
                          si_attenuation);
}

double InterferenceRatio(double sir_threshold, double own_power,
                         double other_power, double intra_distance,
                         double separation, double path_loss_exp) {
  return sir_threshold * (other_power / own_power) *
         std::pow(intra_distance / separation, path_loss_exp);
}

DerivedParams DeriveParams(const Scenario& s) {
  Validate(s);
  DerivedParams out;
  out.lambda1 = SelfInterferenceFactor(s.sir_threshold, s.pair1.intra_distance,
                                       s.path_loss_exp, s.pair1.si_attenuation);
  out.lambda2 = SelfInterferenceFactor(s.sir_threshold, s.pair2.intra_distance,
                                       s.path_loss_exp, s.pair2.si_attenuation);
  out.tau1 = InterferenceRatio(s.sir_threshold, s.pair1.tx_power,
                               s.pair2.tx_power, s.pair1.intra_distance,
                               s.separation, s.path_loss_exp);
  out.tau2 = InterferenceRatio(s.sir_threshold, s.pair2.tx_power,
                               s.pair1.tx_power, s.pair2.intra_distance,
                               s.separation, s.path_loss_exp);
  out.mu1 = 1.0 / (1.0 + out.tau1);
  out.mu2 = 1.0 / (1.0 + out.tau2);
  return out;
}

double SuccessProbability(TransmissionMode self, int n_opponent_tx,
                          double lambda, double mu) {
  if (n_opponent_tx < 0 || n_opponent_tx > 2) {
    throw std::domain_error("n_opponent_tx must be 0, 1 or 2, got " +
                            std::to_string(n_opponent_tx));
  }
  CheckUnitInterval(lambda, "lambda");
  CheckUnitInterval(mu, "mu");
  double external = 1.0;
  for (int k = 0; k < n_opponent_tx; ++k) external *= mu;
  switch (self) {
    case TransmissionMode::kIdle:
      return 0.0;
    case TransmissionMode::kHD:
      return external;
    case TransmissionMode::kFD:
      return lambda * external;
  }
  return 0.0;
}

double PairThroughput(TransmissionMode self, TransmissionMode other,
                      double lambda, double mu) {
  return PacketsSent(self) *
         SuccessProbability(self, PacketsSent(other), lambda, mu);
}

}  // namespace fdd2d
