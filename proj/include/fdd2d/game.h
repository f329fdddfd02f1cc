#ifndef FDD2D_GAME_H_
#define FDD2D_GAME_H_

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "fdd2d/channel_model.h"

// The one-shot transmission game between the two pairs. Each pair picks a
// mode in {Idle, HD, FD}; its utility is its own expected throughput.

namespace fdd2d {

struct PayoffCell {
  double rho1 = 0.0;
  double rho2 = 0.0;
};

// 3x3 bimatrix indexed by (mode of pair 1, mode of pair 2).
class PayoffMatrix {
 public:
  PayoffMatrix() = default;
  explicit PayoffMatrix(const std::array<std::array<PayoffCell, 3>, 3>& cells)
      : cells_(cells) {}

  const PayoffCell& at(TransmissionMode row, TransmissionMode col) const {
    return cells_[static_cast<int>(row)][static_cast<int>(col)];
  }
  // Payoff of `player` (0 or 1) when pair 1 plays `row` and pair 2 `col`.
  double payoff(int player, TransmissionMode row, TransmissionMode col) const {
    const PayoffCell& c = at(row, col);
    return player == 0 ? c.rho1 : c.rho2;
  }

 private:
  std::array<std::array<PayoffCell, 3>, 3> cells_{};
};

PayoffMatrix BuildPayoffMatrix(const DerivedParams& params);

struct DominantMode {
  TransmissionMode mode = TransmissionMode::kHD;
  // Set when 2 lambda == 1: HD and FD pay the same in every column.
  bool boundary = false;
};

// FD iff 2 lambda > 1; HD otherwise. The tie resolves to HD with the
// boundary flag raised.
DominantMode DominantModeFor(double lambda);

// Mean SI attenuation above which FD strictly dominates HD: theta R^alpha.
double DominanceThreshold(double sir_threshold, double intra_distance,
                          double path_loss_exp);

enum class Region { kHdHd, kHdFd, kFdHd, kFdFd };
std::string_view RegionName(Region region);  // "HD-HD", ...

struct Equilibrium {
  TransmissionMode mode1 = TransmissionMode::kHD;
  TransmissionMode mode2 = TransmissionMode::kHD;
  double rho1 = 0.0;
  double rho2 = 0.0;
  Region region = Region::kHdHd;
  bool boundary = false;  // either player sits on the 2 lambda == 1 tie
};

// The profile of dominant modes, read off the payoff matrix.
Equilibrium NashEquilibrium(const DerivedParams& params);

// Exhaustive check over all 9 pure profiles: the profiles where neither
// player can strictly gain by deviating unilaterally.
std::vector<std::pair<TransmissionMode, TransmissionMode>> PureNashProfiles(
    const PayoffMatrix& matrix);

}  // namespace fdd2d

#endif  // FDD2D_GAME_H_
