#ifndef FDD2D_OPTIMIZER_H_
#define FDD2D_OPTIMIZER_H_

#include <array>
#include <string_view>

#include "fdd2d/channel_model.h"

// Cooperative mixed-strategy policy for the symmetric configuration
// (lambda1 == lambda2, mu1 == mu2). Both pairs independently draw
// Idle / HD / FD each slot from the same distribution (p0, p1, p2); the
// objective is the expected throughput of one pair:
//
//   rho = p0 p1 + mu p1^2 + mu^2 p1 p2 + 2 lambda p2 p0
//       + 2 lambda mu p2 p1 + 2 lambda mu^2 p2^2
//
// The objective has no interior local maximum, so the optimum lies on one of
// the three edges of the simplex (p2 = 0, p1 = 0, p0 = 0), each of which is a
// one-dimensional quadratic with a closed-form maximizer. The search is over
// the closed simplex.

namespace fdd2d {

inline constexpr double kSimplexTolerance = 1e-12;

struct MixedStrategy {
  double p_idle = 0.0;
  double p_hd = 1.0;
  double p_fd = 0.0;

  double prob(TransmissionMode mode) const;
};

// Throws std::domain_error when any weight is outside [0, 1] or the weights
// do not sum to 1 within kSimplexTolerance.
void ValidateStrategy(const MixedStrategy& strategy);
MixedStrategy MakeStrategy(double p_idle, double p_hd, double p_fd);

enum class PolicyFamily { kPureHD, kPureFD, kMixedHD, kMixedFD, kMixedHybrid };
std::string_view FamilyName(PolicyFamily family);  // "pure-HD", "mixed-FD", ...

struct PolicySolution {
  PolicyFamily family = PolicyFamily::kPureHD;
  MixedStrategy strategy;
  double rho = 0.0;
};

double MixedObjective(const MixedStrategy& strategy, double lambda, double mu);

// Gradient of the objective in (p0, p1) after eliminating p2 = 1 - p0 - p1.
std::array<double, 2> ObjectiveGradient(double p_idle, double p_hd,
                                         double lambda, double mu);

// Expected throughput of `player` (0 or 1) when the pairs draw modes
// independently from their own strategies. Valid for asymmetric params.
double MixedPairThroughput(const MixedStrategy& strategy1,
                           const MixedStrategy& strategy2,
                           const DerivedParams& params, int player);

// Edge p2 = 0. p1 = 1 / (2 (1 - mu)) below mu = 1/2, pure HD above.
PolicySolution MixedHdOptimum(double mu);

// Edge p1 = 0. p2 = 1 / (2 (1 - mu^2)) below mu = 1/sqrt(2), pure FD above.
PolicySolution MixedFdOptimum(double lambda, double mu);

// Limits of mu that bound the interior branch of the hybrid edge.
struct HybridLimits {
  double lower = 0.0;  // 2 (1 - lambda)
  double upper = 0.0;  // 2 lambda / (4 lambda - 1)
};
HybridLimits HybridMuLimits(double lambda);

// True iff 0 < 2(1 - lambda) < 2 lambda / (4 lambda - 1) < 1. Only then is
// the interior maximizer of the hybrid edge used.
bool HybridWindowHolds(double lambda);

enum class HybridBranch { kPureHD, kInterior, kPureFD };
HybridBranch HybridBranchFor(double lambda, double mu);

// Edge p0 = 0 (HD and FD mixed, never Idle).
PolicySolution MixedHybridOptimum(double lambda, double mu);

// Best of the three edge maxima. Ties keep the earlier family in the order
// mixed-HD, mixed-FD, mixed-hybrid.
PolicySolution GlobalOptimum(double lambda, double mu);

struct StationarityReport {
  double max_interior_rho = 0.0;
  MixedStrategy argmax;
  double min_gradient_norm = 0.0;
  bool any_stationary_point = false;
  int points = 0;
};

// Scans the open-simplex lattice (all weights >= grid_step) for the largest
// objective value and for any point that is both stationary (gradient norm
// below gradient_tol) and no smaller than its lattice neighbours.
StationarityReport InteriorStationarityScan(double lambda, double mu,
                                            double grid_step,
                                            double gradient_tol = 1e-9);

struct BruteForceResult {
  MixedStrategy strategy;
  double rho = 0.0;
};

// Exhaustive evaluation of the objective on the lattice
// {(i, j, k) * step : i + j + k = 1 / step}. Returns the first maximizer in
// lexicographic (i, j) order; the answer does not depend on `threads`.
BruteForceResult BruteForceOptimum(double lambda, double mu, double step,
                                   int threads = 1);

struct AsymmetricResult {
  MixedStrategy strategy1;
  MixedStrategy strategy2;
  double rho1 = 0.0;
  double rho2 = 0.0;
};

// Experimental: maximizes rho1 + rho2 over two independent lattices with
// step >= 0.02. There is no closed form to compare against.
AsymmetricResult BruteForceAsymmetric(const DerivedParams& params, double step,
                                      int threads = 1);

// Number of lattice intervals for a step that divides 1; throws
// std::invalid_argument otherwise.
int LatticeDivisions(double step);

inline constexpr double kDefaultBruteForceStep = 0.005;
inline constexpr double kDefaultStationarityStep = 0.01;
inline constexpr double kMinAsymmetricStep = 0.02;

}  // namespace fdd2d

#endif  // FDD2D_OPTIMIZER_H_
