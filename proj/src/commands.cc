#include "fdd2d/commands.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "fdd2d/channel_model.h"
#include "fdd2d/game.h"
#include "fdd2d/montecarlo.h"
#include "fdd2d/optimizer.h"
#include "fdd2d/scenario_file.h"
#include "fdd2d/sweep.h"

namespace fdd2d {
namespace {

// Raised for a failed --strict consistency check.
struct ConsistencyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string Short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<std::string> SplitComma(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

MixedStrategy ParseStrategy(const std::string& text) {
  const auto parts = SplitComma(text);
  if (parts.size() != 3) {
    throw std::invalid_argument("strategy must be p_idle,p_hd,p_fd: '" + text +
                                "'");
  }
  double p[3];
  for (int i = 0; i < 3; ++i) {
    std::size_t used = 0;
    p[i] = std::stod(parts[i], &used);
    if (used != parts[i].size()) {
      throw std::invalid_argument("bad strategy weight '" + parts[i] + "'");
    }
  }
  return MakeStrategy(p[0], p[1], p[2]);
}

std::ostream& OpenOutput(const std::string& path, std::ofstream& file,
                         std::ostream& fallback) {
  if (path.empty()) return fallback;
  file.open(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot write '" + path + "'");
  return file;
}

void PrintSolution(std::ostream& out, std::string_view label,
                   const PolicySolution& s) {
  out << label << " family=" << FamilyName(s.family)
      << " p0=" << FormatNumber(s.strategy.p_idle)
      << " p1=" << FormatNumber(s.strategy.p_hd)
      << " p2=" << FormatNumber(s.strategy.p_fd)
      << " rho=" << FormatNumber(s.rho) << '\n';
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string scenario;
  std::string out;
};

int Analyze(const AnalyzeArgs& a, std::ostream& out) {
  const Scenario s = LoadScenarioFile(a.scenario).scenario;
  const DerivedParams p = DeriveParams(s);
  out << "theta=" << Short(s.sir_threshold) << " alpha=" << Short(s.path_loss_exp)
      << " D=" << Short(s.separation) << '\n';
  out << "lambda1=" << Short(p.lambda1) << " lambda2=" << Short(p.lambda2)
      << '\n';
  out << "mu1=" << Short(p.mu1) << " mu2=" << Short(p.mu2) << '\n';
  out << "tau1=" << Short(p.tau1) << " tau2=" << Short(p.tau2) << '\n';
  for (int i = 0; i < 2; ++i) {
    const double threshold = DominanceThreshold(
        s.sir_threshold, s.pair(i).intra_distance, s.path_loss_exp);
    out << "beta_star" << i + 1 << '=' << Short(threshold) << " ("
        << Short(LinearToDb(threshold)) << " dB), beta" << i + 1 << '='
        << Short(s.pair(i).si_attenuation) << " ("
        << Short(LinearToDb(s.pair(i).si_attenuation)) << " dB)\n";
  }
  const PayoffMatrix m = BuildPayoffMatrix(p);
  out << "payoff matrix (rho1, rho2), rows pair 1, columns pair 2:\n";
  for (TransmissionMode r : kAllModes) {
    out << "  " << ModeName(r) << ':';
    for (TransmissionMode c : kAllModes) {
      out << "  " << ModeName(c) << "=(" << Short(m.at(r, c).rho1) << ", "
          << Short(m.at(r, c).rho2) << ')';
    }
    out << '\n';
  }
  if (!a.out.empty()) {
    Table t{{"mode1", "mode2", "rho1", "rho2"}, {}};
    for (TransmissionMode r : kAllModes) {
      for (TransmissionMode c : kAllModes) {
        t.rows.push_back({std::string(ModeName(r)), std::string(ModeName(c)),
                          m.at(r, c).rho1, m.at(r, c).rho2});
      }
    }
    std::ofstream file;
    WriteCsv(t, OpenOutput(a.out, file, out));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- game

struct GameArgs {
  std::string scenario;
  std::optional<double> lambda1, lambda2;
  double mu1 = 1.0, mu2 = 1.0;
};

int Game(const GameArgs& a, std::ostream& out) {
  DerivedParams p;
  std::optional<Scenario> s;
  if (!a.scenario.empty()) {
    s = LoadScenarioFile(a.scenario).scenario;
    p = DeriveParams(*s);
  } else {
    if (!a.lambda1 || !a.lambda2) {
      throw std::invalid_argument(
          "game needs a scenario file or both --lambda1 and --lambda2");
    }
    p = ParamsFromAbstract(*a.lambda1, a.mu1, *a.lambda2, a.mu2);
  }
  for (int i = 0; i < 2; ++i) {
    const DominantMode d = DominantModeFor(p.lambda(i));
    out << "pair" << i + 1 << " lambda=" << Short(p.lambda(i))
        << " dominant=" << ModeName(d.mode);
    if (s) {
      out << " beta_star="
          << Short(DominanceThreshold(s->sir_threshold,
                                      s->pair(i).intra_distance,
                                      s->path_loss_exp));
    }
    if (d.boundary) out << " (2*lambda == 1)";
    out << '\n';
  }
  const Equilibrium eq = NashEquilibrium(p);
  out << "NE=" << ModeName(eq.mode1) << ',' << ModeName(eq.mode2);
  if (eq.boundary) out << " BOUNDARY";
  out << '\n';
  out << "REGION=" << RegionName(eq.region) << '\n';
  out << "payoff rho1=" << FormatNumber(eq.rho1)
      << " rho2=" << FormatNumber(eq.rho2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string scenario;
  std::optional<double> lambda, mu;
  std::optional<double> oracle;
  bool strict = false;
  bool experimental = false;
  int threads = 1;
};

int Optimize(const OptimizeArgs& a, std::ostream& out) {
  double lambda = 0.0, mu = 0.0;
  if (!a.scenario.empty()) {
    const DerivedParams p = DeriveParams(LoadScenarioFile(a.scenario).scenario);
    if (!p.symmetric()) {
      if (!a.experimental) {
        throw std::invalid_argument(
            "closed-form optimization covers symmetric pairs only "
            "(lambda1 == lambda2, mu1 == mu2); pass --experimental for the "
            "brute-force search over two independent strategies");
      }
      const double step = a.oracle.value_or(kMinAsymmetricStep);
      const AsymmetricResult r = BruteForceAsymmetric(p, step, a.threads);
      out << "EXPERIMENTAL asymmetric brute force, step=" << FormatNumber(step)
          << '\n';
      for (int i = 0; i < 2; ++i) {
        const MixedStrategy& st = i == 0 ? r.strategy1 : r.strategy2;
        out << "pair" << i + 1 << " p0=" << FormatNumber(st.p_idle)
            << " p1=" << FormatNumber(st.p_hd) << " p2=" << FormatNumber(st.p_fd)
            << " rho=" << FormatNumber(i == 0 ? r.rho1 : r.rho2) << '\n';
      }
      out << "sum_rho=" << FormatNumber(r.rho1 + r.rho2) << '\n';
      return kExitOk;
    }
    lambda = p.lambda1;
    mu = p.mu1;
  } else {
    if (!a.lambda || !a.mu) {
      throw std::invalid_argument(
          "optimize needs a scenario file or both --lambda and --mu");
    }
    lambda = *a.lambda;
    mu = *a.mu;
    if (!(lambda > 0.0 && lambda <= 1.0)) {
      throw std::invalid_argument("lambda must lie in (0, 1]");
    }
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw std::invalid_argument("mu must lie in [0, 1]");
    }
  }
  out << "lambda=" << FormatNumber(lambda) << " mu=" << FormatNumber(mu) << '\n';
  PrintSolution(out, "mixed-HD    ", MixedHdOptimum(mu));
  PrintSolution(out, "mixed-FD    ", MixedFdOptimum(lambda, mu));
  PrintSolution(out, "mixed-hybrid", MixedHybridOptimum(lambda, mu));
  const PolicySolution best = GlobalOptimum(lambda, mu);
  PrintSolution(out, "GLOBAL      ", best);
  if (a.oracle) {
    const BruteForceResult bf =
        BruteForceOptimum(lambda, mu, *a.oracle, a.threads);
    const double gap = std::abs(best.rho - bf.rho);
    out << "ORACLE step=" << FormatNumber(*a.oracle)
        << " p0=" << FormatNumber(bf.strategy.p_idle)
        << " p1=" << FormatNumber(bf.strategy.p_hd)
        << " p2=" << FormatNumber(bf.strategy.p_fd)
        << " rho=" << FormatNumber(bf.rho) << '\n';
    out << "GAP=" << FormatNumber(gap) << '\n';
    if (a.strict && gap > kOracleGapTolerance) {
      throw ConsistencyFailure("oracle gap " + FormatNumber(gap) +
                               " exceeds " + FormatNumber(kOracleGapTolerance));
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario;
  std::string modes;
  std::string strategy1, strategy2;
  std::int64_t slots = 1000000;
  std::uint64_t seed = 1;
  std::string out;
  int threads = 1;
  bool strict = false;
};

struct CheckRow {
  std::string estimand;
  double analytic;
  SimEstimate empirical;
};

int Simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const ScenarioFile file = LoadScenarioFile(a.scenario);
  const DerivedParams p = DeriveParams(file.scenario);
  SimOptions options;
  options.threads = a.threads;
  options.geometry = file.geometry;

  std::vector<CheckRow> rows;
  if (!a.modes.empty()) {
    if (!a.strategy1.empty() || !a.strategy2.empty()) {
      throw std::invalid_argument("give either --modes or --strategy1/2");
    }
    const auto parts = SplitComma(a.modes);
    if (parts.size() != 2) {
      throw std::invalid_argument("--modes expects MODE1,MODE2");
    }
    const TransmissionMode m[2] = {ParseMode(parts[0]), ParseMode(parts[1])};
    const ModeEstimate e =
        Estimate(file.scenario, m[0], m[1], a.slots, a.seed, options);
    for (int i = 0; i < 2; ++i) {
      rows.push_back({"success_p" + std::to_string(i + 1),
                      SuccessProbability(m[i], PacketsSent(m[1 - i]),
                                         p.lambda(i), p.mu(i)),
                      e.success[i]});
    }
    for (int i = 0; i < 2; ++i) {
      rows.push_back({"throughput_p" + std::to_string(i + 1),
                      PairThroughput(m[i], m[1 - i], p.lambda(i), p.mu(i)),
                      e.throughput[i]});
    }
  } else {
    if (a.strategy1.empty() || a.strategy2.empty()) {
      throw std::invalid_argument(
          "simulate needs --modes or both --strategy1 and --strategy2");
    }
    const MixedStrategy s1 = ParseStrategy(a.strategy1);
    const MixedStrategy s2 = ParseStrategy(a.strategy2);
    const auto e = EstimateMixed(file.scenario, s1, s2, a.slots, a.seed, options);
    for (int i = 0; i < 2; ++i) {
      rows.push_back({"throughput_p" + std::to_string(i + 1),
                      MixedPairThroughput(s1, s2, p, i), e[i]});
    }
  }

  // The closed forms assume every cross link has length D.
  const bool comparable = !file.geometry.has_value();
  Table t{{"estimand", "analytic", "empirical", "ci_half_width", "pass"}, {}};
  bool all_pass = true;
  std::ostringstream summary;
  summary << "slots=" << a.slots << " seed=" << a.seed << '\n';
  for (const CheckRow& r : rows) {
    const double diff = std::abs(r.analytic - r.empirical.mean);
    const double bound = 3.0 * r.empirical.sigma();
    const bool pass = diff <= bound;
    if (comparable) all_pass = all_pass && pass;
    t.rows.push_back({r.estimand, comparable ? r.analytic : std::nan(""),
                      r.empirical.mean, r.empirical.half_width_95,
                      std::string(comparable ? (pass ? "true" : "false")
                                             : "n/a")});
    summary << "CHECK " << r.estimand << ' '
            << (comparable ? (pass ? "PASS" : "FAIL") : "N/A")
            << " analytic=" << FormatNumber(r.analytic)
            << " empirical=" << FormatNumber(r.empirical.mean)
            << " 3sigma=" << FormatNumber(bound) << '\n';
  }
  if (!comparable) {
    summary << "note: geometry mode uses true cross distances; the closed "
               "forms do not apply\n";
  }
  if (a.out.empty()) {
    WriteCsv(t, out);
    err << summary.str();
  } else {
    std::ofstream f;
    WriteCsv(t, OpenOutput(a.out, f, out));
    out << summary.str();
  }
  if (a.strict && !all_pass) {
    throw ConsistencyFailure("simulation outside 3 sigma of the closed form");
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string preset;
  std::string variable = "mu";
  std::optional<double> lo, hi;
  double step = 0.01;
  double lambda = 1.0, mu = 1.0;
  std::string scenario;
  std::string out;
};

int Sweep(const SweepArgs& a, std::ostream& out) {
  Table table;
  if (a.preset == "custom") {
    SweepSpec spec;
    spec.variable = ParseSweepVariable(a.variable);
    if (!a.lo || !a.hi) {
      throw std::invalid_argument("custom sweep needs --lo and --hi");
    }
    spec.lo = *a.lo;
    spec.hi = *a.hi;
    spec.step = a.step;
    spec.lambda = a.lambda;
    spec.mu = a.mu;
    if (!a.scenario.empty()) spec.scenario = LoadScenarioFile(a.scenario).scenario;
    table = RunSweep(spec);
  } else {
    table = SweepPreset(a.preset);
  }
  std::ofstream file;
  WriteCsv(table, OpenOutput(a.out, file, out));
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Transmission policies for two full-duplex D2D pairs", "fdd2d"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "Derived parameters and payoff matrix");
  analyze_cmd->add_option("scenario", analyze.scenario, "Scenario file")
      ->required();
  analyze_cmd->add_option("--out", analyze.out, "Write the payoff matrix CSV");

  GameArgs game;
  auto* game_cmd = app.add_subcommand("game", "Dominant modes and the NE");
  game_cmd->add_option("scenario", game.scenario, "Scenario file");
  game_cmd->add_option("--lambda1", game.lambda1);
  game_cmd->add_option("--lambda2", game.lambda2);
  game_cmd->add_option("--mu1", game.mu1, "Default 1");
  game_cmd->add_option("--mu2", game.mu2, "Default 1");

  OptimizeArgs opt;
  auto* opt_cmd =
      app.add_subcommand("optimize", "Optimal symmetric mixed strategy");
  opt_cmd->add_option("scenario", opt.scenario, "Scenario file");
  opt_cmd->add_option("--lambda", opt.lambda);
  opt_cmd->add_option("--mu", opt.mu);
  opt_cmd->add_option("--oracle", opt.oracle,
                      "Also run the brute-force lattice search with this step");
  opt_cmd->add_flag("--strict", opt.strict, "Exit 3 when the oracle gap is large");
  opt_cmd->add_flag("--experimental", opt.experimental,
                    "Allow asymmetric scenarios (brute force only)");
  opt_cmd->add_option("--threads", opt.threads)->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo validation");
  sim_cmd->add_option("scenario", sim.scenario, "Scenario file")->required();
  sim_cmd->add_option("--modes", sim.modes, "MODE1,MODE2 with Idle|HD|FD");
  sim_cmd->add_option("--strategy1", sim.strategy1, "p_idle,p_hd,p_fd");
  sim_cmd->add_option("--strategy2", sim.strategy2, "p_idle,p_hd,p_fd");
  sim_cmd->add_option("--slots", sim.slots)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--out", sim.out, "Write the CSV here");
  sim_cmd->add_option("--threads", sim.threads)->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--strict", sim.strict, "Exit 3 when a check fails");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Figure data as CSV");
  sweep_cmd->add_option("preset", sweep.preset,
                        "fig3|fig4|fig5|fig6|fig7|custom")
      ->required();
  sweep_cmd->add_option("--var", sweep.variable, "mu|lambda|beta_db|D");
  sweep_cmd->add_option("--lo", sweep.lo);
  sweep_cmd->add_option("--hi", sweep.hi);
  sweep_cmd->add_option("--step", sweep.step);
  sweep_cmd->add_option("--lambda", sweep.lambda, "Fixed lambda for mu sweeps");
  sweep_cmd->add_option("--mu", sweep.mu, "Fixed mu for lambda sweeps");
  sweep_cmd->add_option("--scenario", sweep.scenario,
                        "Base scenario for beta_db / D sweeps");
  sweep_cmd->add_option("--out", sweep.out, "Write the CSV here");

  std::vector<std::string> storage = {"fdd2d"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; anything else is a usage error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze_cmd->parsed()) return Analyze(analyze, out);
    if (game_cmd->parsed()) return Game(game, out);
    if (opt_cmd->parsed()) return Optimize(opt, out);
    if (sim_cmd->parsed()) return Simulate(sim, out, err);
    if (sweep_cmd->parsed()) {
      if (sweep.preset != "custom" && !IsPreset(sweep.preset)) {
        err << "error: unknown preset '" << sweep.preset << "'\n";
        return kExitInput;
      }
      return Sweep(sweep, out);
    }
  } catch (const ConsistencyFailure& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::exception& e) {
    // Configuration, domain and parse problems all count as bad input.
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace fdd2d
