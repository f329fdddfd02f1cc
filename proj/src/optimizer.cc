#include "fdd2d/optimizer.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdd2d/game.h"
#include "parallel.h"

namespace fdd2d {
namespace {

void CheckUnit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
  }
}

PolicySolution Canonical(PolicyFamily family, const MixedStrategy& s,
                         double lambda, double mu) {
  if (s.p_hd == 1.0) family = PolicyFamily::kPureHD;
  if (s.p_fd == 1.0) family = PolicyFamily::kPureFD;
  return PolicySolution{family, s, MixedObjective(s, lambda, mu)};
}

// Objective on the lattice point (i, j, n - i - j) / n.
double LatticeObjective(int i, int j, int n, double lambda, double mu) {
  const double inv = 1.0 / n;
  return MixedObjective(MixedStrategy{i * inv, j * inv, (n - i - j) * inv},
                        lambda, mu);
}

}  // namespace

double MixedStrategy::prob(TransmissionMode mode) const {
  switch (mode) {
    case TransmissionMode::kIdle:
      return p_idle;
    case TransmissionMode::kHD:
      return p_hd;
    case TransmissionMode::kFD:
      return p_fd;
  }
  return 0.0;
}

void ValidateStrategy(const MixedStrategy& s) {
  for (double p : {s.p_idle, s.p_hd, s.p_fd}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::domain_error("strategy weights must lie in [0, 1]");
    }
  }
  if (std::abs(s.p_idle + s.p_hd + s.p_fd - 1.0) > kSimplexTolerance) {
    throw std::domain_error("strategy weights must sum to 1");
  }
}

MixedStrategy MakeStrategy(double p_idle, double p_hd, double p_fd) {
  MixedStrategy s{p_idle, p_hd, p_fd};
  ValidateStrategy(s);
  return s;
}

std::string_view FamilyName(PolicyFamily family) {
  switch (family) {
    case PolicyFamily::kPureHD:
      return "pure-HD";
    case PolicyFamily::kPureFD:
      return "pure-FD";
    case PolicyFamily::kMixedHD:
      return "mixed-HD";
    case PolicyFamily::kMixedFD:
      return "mixed-FD";
    case PolicyFamily::kMixedHybrid:
      return "mixed-hybrid";
  }
  return "?";
}

double MixedObjective(const MixedStrategy& s, double lambda, double mu) {
  ValidateStrategy(s);
  const double p0 = s.p_idle, p1 = s.p_hd, p2 = s.p_fd;
  return p0 * p1 + mu * p1 * p1 + mu * mu * p1 * p2 +
         2.0 * lambda * p2 * p0 + 2.0 * lambda * mu * p2 * p1 +
         2.0 * lambda * mu * mu * p2 * p2;
}

std::array<double, 2> ObjectiveGradient(double p0, double p1, double lambda,
                                        double mu) {
  const double p2 = 1.0 - p0 - p1;
  const double mu2 = mu * mu;
  // Partial derivatives of the unconstrained polynomial.
  const double d0 = p1 + 2.0 * lambda * p2;
  const double d1 = p0 + 2.0 * mu * p1 + mu2 * p2 + 2.0 * lambda * mu * p2;
  const double d2 = mu2 * p1 + 2.0 * lambda * p0 + 2.0 * lambda * mu * p1 +
                    4.0 * lambda * mu2 * p2;
  return {d0 - d2, d1 - d2};
}

double MixedPairThroughput(const MixedStrategy& strategy1,
                           const MixedStrategy& strategy2,
                           const DerivedParams& params, int player) {
  ValidateStrategy(strategy1);
  ValidateStrategy(strategy2);
  const MixedStrategy& own = player == 0 ? strategy1 : strategy2;
  const MixedStrategy& other = player == 0 ? strategy2 : strategy1;
  double total = 0.0;
  for (TransmissionMode a : kAllModes) {
    for (TransmissionMode b : kAllModes) {
      total += own.prob(a) * other.prob(b) *
               PairThroughput(a, b, params.lambda(player), params.mu(player));
    }
  }
  return total;
}

PolicySolution MixedHdOptimum(double mu) {
  CheckUnit(mu, "mu");
  const double p1 = mu < 0.5 ? 1.0 / (2.0 * (1.0 - mu)) : 1.0;
  const MixedStrategy s{1.0 - p1, p1, 0.0};
  // lambda plays no role on this edge.
  PolicySolution out = Canonical(PolicyFamily::kMixedHD, s, 1.0, mu);
  out.rho = mu < 0.5 ? 1.0 / (4.0 * (1.0 - mu)) : mu;
  return out;
}

PolicySolution MixedFdOptimum(double lambda, double mu) {
  CheckUnit(lambda, "lambda");
  CheckUnit(mu, "mu");
  const double mu2 = mu * mu;
  const bool mixed = mu < 1.0 / std::sqrt(2.0);
  const double p2 = mixed ? 1.0 / (2.0 * (1.0 - mu2)) : 1.0;
  PolicySolution out =
      Canonical(PolicyFamily::kMixedFD, MixedStrategy{1.0 - p2, 0.0, p2},
                lambda, mu);
  out.rho = mixed ? lambda / (2.0 * (1.0 - mu2)) : 2.0 * lambda * mu2;
  return out;
}

HybridLimits HybridMuLimits(double lambda) {
  return HybridLimits{2.0 * (1.0 - lambda),
                      2.0 * lambda / (4.0 * lambda - 1.0)};
}

bool HybridWindowHolds(double lambda) {
  if (lambda <= 0.25) return false;  // upper limit is negative or undefined
  const HybridLimits lim = HybridMuLimits(lambda);
  return 0.0 < lim.lower && lim.lower < lim.upper && lim.upper < 1.0;
}

HybridBranch HybridBranchFor(double lambda, double mu) {
  CheckUnit(lambda, "lambda");
  CheckUnit(mu, "mu");
  if (lambda <= 0.5) return HybridBranch::kPureHD;
  if (!HybridWindowHolds(lambda)) {
    // Only lambda == 1 reaches here: the lower limit collapses to 0. Keep
    // the better endpoint of the edge.
    return mu >= 2.0 * lambda * mu * mu ? HybridBranch::kPureHD
                                        : HybridBranch::kPureFD;
  }
  const HybridLimits lim = HybridMuLimits(lambda);
  if (mu <= lim.lower) return HybridBranch::kPureHD;
  if (mu >= lim.upper) return HybridBranch::kPureFD;
  return HybridBranch::kInterior;
}

PolicySolution MixedHybridOptimum(double lambda, double mu) {
  double p1 = 1.0;
  switch (HybridBranchFor(lambda, mu)) {
    case HybridBranch::kPureHD:
      p1 = 1.0;
      break;
    case HybridBranch::kPureFD:
      p1 = 0.0;
      break;
    case HybridBranch::kInterior:
      p1 = (4.0 * lambda * mu - 2.0 * lambda - mu) /
           (2.0 * (1.0 - 2.0 * lambda) * (1.0 - mu));
      break;
  }
  return Canonical(PolicyFamily::kMixedHybrid, MixedStrategy{0.0, p1, 1.0 - p1},
                   lambda, mu);
}

PolicySolution GlobalOptimum(double lambda, double mu) {
  const PolicySolution candidates[] = {MixedHdOptimum(mu),
                                       MixedFdOptimum(lambda, mu),
                                       MixedHybridOptimum(lambda, mu)};
  PolicySolution best = candidates[0];
  for (const PolicySolution& c : candidates) {
    if (c.rho > best.rho) best = c;
  }
  return best;
}

StationarityReport InteriorStationarityScan(double lambda, double mu,
                                            double grid_step,
                                            double gradient_tol) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw std::invalid_argument("grid_step must lie in (0, 0.1]");
  }
  const int n = LatticeDivisions(grid_step);
  StationarityReport report;
  report.max_interior_rho = -std::numeric_limits<double>::infinity();
  report.min_gradient_norm = std::numeric_limits<double>::infinity();
  // Neighbour offsets in (i, j); k follows from the constraint.
  constexpr int kNeighbours[6][2] = {{1, 0}, {-1, 0}, {0, 1},
                                     {0, -1}, {1, -1}, {-1, 1}};
  for (int i = 1; i < n; ++i) {
    for (int j = 1; i + j < n; ++j) {
      const double rho = LatticeObjective(i, j, n, lambda, mu);
      ++report.points;
      if (rho > report.max_interior_rho) {
        report.max_interior_rho = rho;
        report.argmax = MixedStrategy{static_cast<double>(i) / n,
                                      static_cast<double>(j) / n,
                                      static_cast<double>(n - i - j) / n};
      }
      const auto g = ObjectiveGradient(static_cast<double>(i) / n,
                                       static_cast<double>(j) / n, lambda, mu);
      const double norm = std::hypot(g[0], g[1]);
      report.min_gradient_norm = std::min(report.min_gradient_norm, norm);
      if (norm >= gradient_tol) continue;
      bool local_max = true;
      for (const auto& d : kNeighbours) {
        const int ni = i + d[0], nj = j + d[1];
        if (ni < 0 || nj < 0 || ni + nj > n) continue;
        if (LatticeObjective(ni, nj, n, lambda, mu) > rho) {
          local_max = false;
          break;
        }
      }
      if (local_max) report.any_stationary_point = true;
    }
  }
  return report;
}

int LatticeDivisions(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("lattice step must lie in (0, 1]");
  }
  const double divisions = std::round(1.0 / step);
  if (std::abs(divisions * step - 1.0) > 1e-9 || divisions > 1e6) {
    throw std::invalid_argument("lattice step must divide 1, got " +
                                std::to_string(step));
  }
  return static_cast<int>(divisions);
}

BruteForceResult BruteForceOptimum(double lambda, double mu, double step,
                                   int threads) {
  const int n = LatticeDivisions(step);
  struct Best {
    int i = -1, j = -1;
    double rho = -std::numeric_limits<double>::infinity();
  };
  const auto partial = internal::MapChunks<Best>(
      n + 1, threads, [&](std::int64_t begin, std::int64_t end) {
        Best best;
        for (int i = static_cast<int>(begin); i < end; ++i) {
          for (int j = 0; i + j <= n; ++j) {
            const double rho = LatticeObjective(i, j, n, lambda, mu);
            if (rho > best.rho) best = Best{i, j, rho};
          }
        }
        return best;
      });
  Best best;
  for (const Best& b : partial) {
    if (b.rho > best.rho) best = b;
  }
  const double inv = 1.0 / n;
  return BruteForceResult{
      MixedStrategy{best.i * inv, best.j * inv, (n - best.i - best.j) * inv},
      best.rho};
}

AsymmetricResult BruteForceAsymmetric(const DerivedParams& params, double step,
                                      int threads) {
  if (step < kMinAsymmetricStep - 1e-12) {
    throw std::invalid_argument("asymmetric search requires step >= 0.02");
  }
  const int n = LatticeDivisions(step);
  std::vector<MixedStrategy> lattice;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      lattice.push_back(MixedStrategy{static_cast<double>(i) / n,
                                      static_cast<double>(j) / n,
                                      static_cast<double>(n - i - j) / n});
    }
  }
  const PayoffMatrix payoff = BuildPayoffMatrix(params);
  auto expected = [&payoff](const MixedStrategy& s1, const MixedStrategy& s2,
                            int player) {
    double total = 0.0;
    for (TransmissionMode a : kAllModes) {
      for (TransmissionMode b : kAllModes) {
        total += s1.prob(a) * s2.prob(b) * payoff.payoff(player, a, b);
      }
    }
    return total;
  };
  struct Best {
    std::int64_t a = -1, b = -1;
    double rho1 = 0.0, rho2 = 0.0;
    double total = -std::numeric_limits<double>::infinity();
  };
  const auto partial = internal::MapChunks<Best>(
      static_cast<std::int64_t>(lattice.size()), threads,
      [&](std::int64_t begin, std::int64_t end) {
        Best best;
        for (std::int64_t a = begin; a < end; ++a) {
          for (std::int64_t b = 0; b < static_cast<std::int64_t>(lattice.size());
               ++b) {
            const double r1 = expected(lattice[a], lattice[b], 0);
            const double r2 = expected(lattice[a], lattice[b], 1);
            if (r1 + r2 > best.total) best = Best{a, b, r1, r2, r1 + r2};
          }
        }
        return best;
      });
  Best best;
  for (const Best& b : partial) {
    if (b.total > best.total) best = b;
  }
  return AsymmetricResult{lattice[best.a], lattice[best.b], best.rho1,
                          best.rho2};
}

}  // namespace fdd2d
