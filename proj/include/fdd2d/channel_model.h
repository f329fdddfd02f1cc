#ifndef FDD2D_CHANNEL_MODEL_H_
#define FDD2D_CHANNEL_MODEL_H_

#include <array>
#include <string>
#include <string_view>

// Physical-layer model of two full-duplex capable D2D pairs sharing a band.
//
// Each pair i transmits with power P_i over intra-pair distance R_i. Links
// suffer power-law path loss (exponent alpha) and Rayleigh fading (Exp(1)
// power gains). All cross links between the pairs use the midpoint
// separation D. A receiver in FD mode additionally sees residual
// self-interference kappa * P_i with kappa ~ Exp(beta_i). A packet succeeds
// iff SIR > theta. Thermal noise is ignored.
//
// Everything here is linear units; the dB conversions live at the I/O edge.

namespace fdd2d {

enum class TransmissionMode { kIdle = 0, kHD = 1, kFD = 2 };

inline constexpr std::array<TransmissionMode, 3> kAllModes = {
    TransmissionMode::kIdle, TransmissionMode::kHD, TransmissionMode::kFD};

// Number of packets a pair puts on the air in one slot: 0, 1 or 2.
constexpr int PacketsSent(TransmissionMode mode) {
  return static_cast<int>(mode);
}

std::string_view ModeName(TransmissionMode mode);  // "Idle", "HD", "FD"
// Accepts the names above case-insensitively; throws std::invalid_argument.
TransmissionMode ParseMode(std::string_view name);

struct PairConfig {
  double tx_power = 1.0;        // P_i, linear
  double intra_distance = 1.0;  // R_i, meters
  double si_attenuation = 1.0;  // beta_i = 1 / E[kappa], linear
};

struct Scenario {
  PairConfig pair1;
  PairConfig pair2;
  double separation = 1.0;     // D, meters, between pair midpoints
  double path_loss_exp = 4.0;  // alpha >= 2
  double sir_threshold = 1.0;  // theta, linear

  const PairConfig& pair(int index) const {
    return index == 0 ? pair1 : pair2;
  }
};

// Throws std::invalid_argument naming the first violated invariant.
void Validate(const PairConfig& pair, std::string_view label);
void Validate(const Scenario& scenario);

// Abstracted per-pair parameters. lambda captures self-interference, mu the
// per-transmission penalty from the other pair, tau = 1/mu - 1.
struct DerivedParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double mu1 = 1.0;
  double mu2 = 1.0;
  double tau1 = 0.0;
  double tau2 = 0.0;

  double lambda(int index) const { return index == 0 ? lambda1 : lambda2; }
  double mu(int index) const { return index == 0 ? mu1 : mu2; }
  bool symmetric() const { return lambda1 == lambda2 && mu1 == mu2; }
};

// Builds params directly from (lambda, mu) values, bypassing the physical
// scenario. tau is back-computed from mu (infinite when mu == 0).
DerivedParams ParamsFromAbstract(double lambda1, double mu1, double lambda2,
                                 double mu2);

// theta = 2^rate - 1. Throws std::domain_error for a negative or non-finite
// rate.
double ThetaFromRate(double rate);
// Inverse of ThetaFromRate: log2(1 + theta).
double RateFromTheta(double theta);

double DbToLinear(double db);
double LinearToDb(double linear);

// lambda = 1 / (1 + theta R^alpha / beta).
double SelfInterferenceFactor(double sir_threshold, double intra_distance,
                              double path_loss_exp, double si_attenuation);
// tau_i = theta (P_j / P_i) (R_i / D)^alpha.
double InterferenceRatio(double sir_threshold, double own_power,
                         double other_power, double intra_distance,
                         double separation, double path_loss_exp);

DerivedParams DeriveParams(const Scenario& scenario);

// Per-receiver success probability of one packet: 0 for Idle, mu^n for HD,
// lambda * mu^n for FD, with n the number of packets the other pair sends.
// Throws std::domain_error when n_opponent_tx is outside {0, 1, 2}.
double SuccessProbability(TransmissionMode self, int n_opponent_tx,
                          double lambda, double mu);

// Expected successful packets per slot for a pair in mode `self` facing an
// opponent in mode `other`. FD counts both receivers.
double PairThroughput(TransmissionMode self, TransmissionMode other,
                      double lambda, double mu);

}  // namespace fdd2d

#endif  // FDD2D_CHANNEL_MODEL_H_
