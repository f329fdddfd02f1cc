#ifndef FDD2D_SWEEP_H_
#define FDD2D_SWEEP_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fdd2d/channel_model.h"

// Tabular parameter sweeps that regenerate the data behind the throughput
// figures, plus custom one-variable sweeps.

namespace fdd2d {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  // Index of a column; throws std::out_of_range for an unknown name.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

// Header row, then one line per row. Numbers use 12 significant digits
// ("%#.12g"), so the output is byte-stable for a given input.
void WriteCsv(const Table& table, std::ostream& out);
std::string FormatNumber(double value);

// Presets: "fig3" (throughput of pair 1 per pure profile, lambda1 = 0.8),
// "fig4" (hybrid mu limits over lambda in (0.25, 1]), "fig5" / "fig6"
// (per-family optima for lambda in {1, 0.6} / {0.5, 0.3}), "fig7" (game vs
// optimal policy). Throws std::invalid_argument for an unknown name.
Table SweepPreset(std::string_view name);
bool IsPreset(std::string_view name);

enum class SweepVariable { kMu, kLambda, kBetaDb, kSeparation };
// "mu", "lambda", "beta_db", "D"; throws std::invalid_argument.
SweepVariable ParseSweepVariable(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kMu;
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.01;
  // Held fixed in symmetric mu / lambda sweeps.
  double lambda = 1.0;
  double mu = 1.0;
  // Base configuration for beta_db / D sweeps.
  std::optional<Scenario> scenario;
};

// Throws std::invalid_argument when lo >= hi, step <= 0, the step does not
// tile [lo, hi], a swept lambda leaves (0, 1] or a swept mu leaves [0, 1].
void ValidateSweep(const SweepSpec& spec);
std::vector<double> SweepGrid(double lo, double hi, double step);

Table RunSweep(const SweepSpec& spec);

}  // namespace fdd2d

#endif  // FDD2D_SWEEP_H_
