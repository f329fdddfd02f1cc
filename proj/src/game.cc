#include "fdd2d/game.h"

#include <cmath>

namespace fdd2d {

PayoffMatrix BuildPayoffMatrix(const DerivedParams& params) {
  std::array<std::array<PayoffCell, 3>, 3> cells{};
  for (TransmissionMode m1 : kAllModes) {
    for (TransmissionMode m2 : kAllModes) {
      cells[static_cast<int>(m1)][static_cast<int>(m2)] = PayoffCell{
          PairThroughput(m1, m2, params.lambda1, params.mu1),
          PairThroughput(m2, m1, params.lambda2, params.mu2)};
    }
  }
  return PayoffMatrix(cells);
}

DominantMode DominantModeFor(double lambda) {
  const double doubled = 2.0 * lambda;
  if (doubled > 1.0) return {TransmissionMode::kFD, false};
  return {TransmissionMode::kHD, doubled == 1.0};
}

double DominanceThreshold(double sir_threshold, double intra_distance,
                          double path_loss_exp) {
  return sir_threshold * std::pow(intra_distance, path_loss_exp);
}

std::string_view RegionName(Region region) {
  switch (region) {
    case Region::kHdHd:
      return "HD-HD";
    case Region::kHdFd:
      return "HD-FD";
    case Region::kFdHd:
      return "FD-HD";
    case Region::kFdFd:
      return "FD-FD";
  }
  return "?";
}

Equilibrium NashEquilibrium(const DerivedParams& params) {
  const DominantMode d1 = DominantModeFor(params.lambda1);
  const DominantMode d2 = DominantModeFor(params.lambda2);
  const PayoffCell cell = BuildPayoffMatrix(params).at(d1.mode, d2.mode);

  Equilibrium eq;
  eq.mode1 = d1.mode;
  eq.mode2 = d2.mode;
  eq.rho1 = cell.rho1;
  eq.rho2 = cell.rho2;
  eq.boundary = d1.boundary || d2.boundary;
  const bool fd1 = d1.mode == TransmissionMode::kFD;
  const bool fd2 = d2.mode == TransmissionMode::kFD;
  eq.region = fd1 ? (fd2 ? Region::kFdFd : Region::kFdHd)
                  : (fd2 ? Region::kHdFd : Region::kHdHd);
  return eq;
}

std::vector<std::pair<TransmissionMode, TransmissionMode>> PureNashProfiles(
    const PayoffMatrix& matrix) {
  std::vector<std::pair<TransmissionMode, TransmissionMode>> out;
  for (TransmissionMode m1 : kAllModes) {
    for (TransmissionMode m2 : kAllModes) {
      bool stable = true;
      for (TransmissionMode dev : kAllModes) {
        if (matrix.payoff(0, dev, m2) > matrix.payoff(0, m1, m2) ||
            matrix.payoff(1, m1, dev) > matrix.payoff(1, m1, m2)) {
          stable = false;
          break;
        }
      }
      if (stable) out.emplace_back(m1, m2);
    }
  }
  return out;
}

}  // namespace fdd2d
