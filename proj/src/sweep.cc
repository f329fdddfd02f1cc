#include "fdd2d/sweep.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fdd2d/game.h"
#include "fdd2d/optimizer.h"

namespace fdd2d {
namespace {

constexpr double kFigureStep = 0.01;

Table Fig3() {
  constexpr double kLambda = 0.8;
  Table t{{"mu", "rho_hd_hd", "rho_hd_fd", "rho_fd_hd", "rho_fd_fd"}, {}};
  using M = TransmissionMode;
  for (double mu : SweepGrid(0.0, 1.0, kFigureStep)) {
    t.rows.push_back({mu, PairThroughput(M::kHD, M::kHD, kLambda, mu),
                      PairThroughput(M::kHD, M::kFD, kLambda, mu),
                      PairThroughput(M::kFD, M::kHD, kLambda, mu),
                      PairThroughput(M::kFD, M::kFD, kLambda, mu)});
  }
  return t;
}

Table Fig4() {
  Table t{{"lambda", "mu_lower", "mu_upper", "hybrid_window"}, {}};
  for (double lambda : SweepGrid(0.26, 1.0, kFigureStep)) {
    const HybridLimits lim = HybridMuLimits(lambda);
    t.rows.push_back({lambda, lim.lower, lim.upper,
                      HybridWindowHolds(lambda) ? 1.0 : 0.0});
  }
  return t;
}

Table FamilyOptima(std::initializer_list<double> lambdas) {
  Table t{{"lambda", "mu", "mixed_hd", "mixed_fd", "mixed_hybrid", "optimal",
           "optimal_family"},
          {}};
  for (double lambda : lambdas) {
    for (double mu : SweepGrid(0.0, 1.0, kFigureStep)) {
      const PolicySolution best = GlobalOptimum(lambda, mu);
      t.rows.push_back({lambda, mu, MixedHdOptimum(mu).rho,
                        MixedFdOptimum(lambda, mu).rho,
                        MixedHybridOptimum(lambda, mu).rho, best.rho,
                        std::string(FamilyName(best.family))});
    }
  }
  return t;
}

Table Fig7() {
  Table t{{"mu", "pure_hd", "pure_fd", "mixed_hd", "mixed_fd"}, {}};
  using M = TransmissionMode;
  for (double mu : SweepGrid(0.0, 1.0, kFigureStep)) {
    t.rows.push_back({mu, PairThroughput(M::kHD, M::kHD, 1.0, mu),
                      PairThroughput(M::kFD, M::kFD, 1.0, mu),
                      MixedHdOptimum(mu).rho, MixedFdOptimum(1.0, mu).rho});
  }
  return t;
}

Table SymmetricSweep(const SweepSpec& spec) {
  Table t{{spec.variable == SweepVariable::kMu ? "mu" : "lambda", "lambda",
           "mu", "ne_mode", "ne_rho", "mixed_hd", "mixed_fd", "mixed_hybrid",
           "optimal", "optimal_family"},
          {}};
  for (double x : SweepGrid(spec.lo, spec.hi, spec.step)) {
    const double lambda = spec.variable == SweepVariable::kLambda ? x : spec.lambda;
    const double mu = spec.variable == SweepVariable::kMu ? x : spec.mu;
    const Equilibrium ne =
        NashEquilibrium(ParamsFromAbstract(lambda, mu, lambda, mu));
    const PolicySolution best = GlobalOptimum(lambda, mu);
    t.rows.push_back({x, lambda, mu, std::string(ModeName(ne.mode1)), ne.rho1,
                      MixedHdOptimum(mu).rho, MixedFdOptimum(lambda, mu).rho,
                      MixedHybridOptimum(lambda, mu).rho, best.rho,
                      std::string(FamilyName(best.family))});
  }
  return t;
}

Table ScenarioSweep(const SweepSpec& spec) {
  const bool beta = spec.variable == SweepVariable::kBetaDb;
  Table t{{beta ? "beta_db" : "D", "lambda1", "lambda2", "mu1", "mu2",
           "ne_mode1", "ne_mode2", "ne_rho1", "ne_rho2", "optimal",
           "optimal_family"},
          {}};
  for (double x : SweepGrid(spec.lo, spec.hi, spec.step)) {
    Scenario s = *spec.scenario;
    if (beta) {
      s.pair1.si_attenuation = s.pair2.si_attenuation = DbToLinear(x);
    } else {
      s.separation = x;
    }
    const DerivedParams params = DeriveParams(s);
    const Equilibrium ne = NashEquilibrium(params);
    std::vector<Cell> row = {x,
                             params.lambda1,
                             params.lambda2,
                             params.mu1,
                             params.mu2,
                             std::string(ModeName(ne.mode1)),
                             std::string(ModeName(ne.mode2)),
                             ne.rho1,
                             ne.rho2};
    if (params.symmetric()) {
      const PolicySolution best = GlobalOptimum(params.lambda1, params.mu1);
      row.emplace_back(best.rho);
      row.emplace_back(std::string(FamilyName(best.family)));
    } else {
      // Closed-form optimum is defined for symmetric pairs only.
      row.emplace_back(std::string());
      row.emplace_back(std::string());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column named " + std::string(name));
}

double Table::number(std::size_t row, std::string_view name) const {
  return std::get<double>(rows.at(row).at(column(name)));
}

std::string FormatNumber(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.12g", value);
  return buf;
}

void WriteCsv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out << FormatNumber(*d);
      } else {
        out << std::get<std::string>(row[i]);
      }
    }
    out << '\n';
  }
}

bool IsPreset(std::string_view name) {
  return name == "fig3" || name == "fig4" || name == "fig5" ||
         name == "fig6" || name == "fig7";
}

Table SweepPreset(std::string_view name) {
  if (name == "fig3") return Fig3();
  if (name == "fig4") return Fig4();
  if (name == "fig5") return FamilyOptima({1.0, 0.6});
  if (name == "fig6") return FamilyOptima({0.5, 0.3});
  if (name == "fig7") return Fig7();
  throw std::invalid_argument("unknown sweep preset '" + std::string(name) +
                              "'");
}

SweepVariable ParseSweepVariable(std::string_view name) {
  if (name == "mu") return SweepVariable::kMu;
  if (name == "lambda") return SweepVariable::kLambda;
  if (name == "beta_db") return SweepVariable::kBetaDb;
  if (name == "D") return SweepVariable::kSeparation;
  throw std::invalid_argument("unknown sweep variable '" + std::string(name) +
                              "' (expected mu, lambda, beta_db or D)");
}

std::vector<double> SweepGrid(double lo, double hi, double step) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw std::invalid_argument("sweep range needs lo < hi");
  }
  if (!(step > 0.0)) throw std::invalid_argument("sweep step must be positive");
  const double span = hi - lo;
  const double n = std::round(span / step);
  if (n < 1 || std::abs(n * step - span) > 1e-9 * std::max(1.0, span)) {
    throw std::invalid_argument("sweep step must tile [lo, hi]");
  }
  const auto count = static_cast<long>(n);
  std::vector<double> grid;
  grid.reserve(count + 1);
  for (long i = 0; i <= count; ++i) {
    grid.push_back(i == count ? hi : lo + span * static_cast<double>(i) / n);
  }
  return grid;
}

void ValidateSweep(const SweepSpec& spec) {
  SweepGrid(spec.lo, spec.hi, spec.step);
  switch (spec.variable) {
    case SweepVariable::kMu:
      if (spec.lo < 0.0 || spec.hi > 1.0) {
        throw std::invalid_argument("swept mu must stay within [0, 1]");
      }
      if (!(spec.lambda > 0.0 && spec.lambda <= 1.0)) {
        throw std::invalid_argument("fixed lambda must lie in (0, 1]");
      }
      break;
    case SweepVariable::kLambda:
      if (spec.lo <= 0.0 || spec.hi > 1.0) {
        throw std::invalid_argument("swept lambda must stay within (0, 1]");
      }
      if (!(spec.mu >= 0.0 && spec.mu <= 1.0)) {
        throw std::invalid_argument("fixed mu must lie in [0, 1]");
      }
      break;
    case SweepVariable::kBetaDb:
    case SweepVariable::kSeparation:
      if (!spec.scenario) {
        throw std::invalid_argument("beta_db and D sweeps need a scenario");
      }
      Validate(*spec.scenario);
      if (spec.variable == SweepVariable::kSeparation && spec.lo <= 0.0) {
        throw std::invalid_argument("swept D must stay positive");
      }
      break;
  }
}

Table RunSweep(const SweepSpec& spec) {
  ValidateSweep(spec);
  if (spec.variable == SweepVariable::kMu ||
      spec.variable == SweepVariable::kLambda) {
    return SymmetricSweep(spec);
  }
  return ScenarioSweep(spec);
}

}  // namespace fdd2d
