#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fdd2d/channel_model.h"
#include "fdd2d/commands.h"
#include "fdd2d/game.h"
#include "fdd2d/montecarlo.h"
#include "fdd2d/optimizer.h"
#include "fdd2d/scenario_file.h"
#include "fdd2d/sweep.h"

namespace py = pybind11;
using namespace fdd2d;

namespace {

py::dict TableToDict(const Table& t) {
  py::list rows;
  for (const auto& row : t.rows) {
    py::list cells;
    for (const Cell& c : row) {
      if (const double* d = std::get_if<double>(&c)) {
        cells.append(*d);
      } else {
        cells.append(std::get<std::string>(c));
      }
    }
    rows.append(py::tuple(cells));
  }
  py::dict out;
  out["columns"] = t.columns;
  out["rows"] = rows;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transmission policies for two full-duplex D2D pairs";
  m.attr("__version__") = "0.1.0";

  py::enum_<TransmissionMode>(m, "Mode")
      .value("IDLE", TransmissionMode::kIdle)
      .value("HD", TransmissionMode::kHD)
      .value("FD", TransmissionMode::kFD);

  py::class_<PairConfig>(m, "PairConfig")
      .def(py::init<>())
      .def(py::init([](double p, double r, double beta) {
             return PairConfig{p, r, beta};
           }),
           py::arg("tx_power"), py::arg("intra_distance"),
           py::arg("si_attenuation"))
      .def_readwrite("tx_power", &PairConfig::tx_power)
      .def_readwrite("intra_distance", &PairConfig::intra_distance)
      .def_readwrite("si_attenuation", &PairConfig::si_attenuation);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def(py::init([](PairConfig p1, PairConfig p2, double d, double alpha,
                       double theta) {
             return Scenario{p1, p2, d, alpha, theta};
           }),
           py::arg("pair1"), py::arg("pair2"), py::arg("separation"),
           py::arg("path_loss_exp"), py::arg("sir_threshold"))
      .def_readwrite("pair1", &Scenario::pair1)
      .def_readwrite("pair2", &Scenario::pair2)
      .def_readwrite("separation", &Scenario::separation)
      .def_readwrite("path_loss_exp", &Scenario::path_loss_exp)
      .def_readwrite("sir_threshold", &Scenario::sir_threshold);

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("lambda1", &DerivedParams::lambda1)
      .def_readonly("lambda2", &DerivedParams::lambda2)
      .def_readonly("mu1", &DerivedParams::mu1)
      .def_readonly("mu2", &DerivedParams::mu2)
      .def_readonly("tau1", &DerivedParams::tau1)
      .def_readonly("tau2", &DerivedParams::tau2)
      .def("symmetric", &DerivedParams::symmetric);

  m.def("theta_from_rate", &ThetaFromRate, py::arg("rate"));
  m.def("derive_params", &DeriveParams, py::arg("scenario"));
  m.def("params_from_abstract", &ParamsFromAbstract, py::arg("lambda1"),
        py::arg("mu1"), py::arg("lambda2"), py::arg("mu2"));
  m.def("success_probability", &SuccessProbability, py::arg("mode"),
        py::arg("interferers"), py::arg("lam"), py::arg("mu"));
  m.def("pair_throughput", &PairThroughput, py::arg("own"), py::arg("other"),
        py::arg("lam"), py::arg("mu"));

  m.def("load_scenario", [](const std::string& path) {
    return LoadScenarioFile(path).scenario;
  }, py::arg("path"));
  m.def("parse_scenario", [](const std::string& text) {
    return ParseScenarioText(text).scenario;
  }, py::arg("text"));

  // Game.
  m.def("payoff_matrix", [](const DerivedParams& p) {
    const PayoffMatrix pm = BuildPayoffMatrix(p);
    std::vector<std::vector<std::pair<double, double>>> out(3);
    for (TransmissionMode r : kAllModes) {
      for (TransmissionMode c : kAllModes) {
        out[static_cast<int>(r)].emplace_back(pm.at(r, c).rho1, pm.at(r, c).rho2);
      }
    }
    return out;
  }, py::arg("params"), "3x3 nested list of (rho1, rho2), rows pair 1.");
  m.def("dominant_mode", [](double lambda) {
    const DominantMode d = DominantModeFor(lambda);
    return py::make_tuple(d.mode, d.boundary);
  }, py::arg("lam"));
  m.def("nash_equilibrium", [](const DerivedParams& p) {
    const Equilibrium e = NashEquilibrium(p);
    py::dict out;
    out["modes"] = py::make_tuple(e.mode1, e.mode2);
    out["rho"] = py::make_tuple(e.rho1, e.rho2);
    out["region"] = std::string(RegionName(e.region));
    out["boundary"] = e.boundary;
    return out;
  }, py::arg("params"));

  // Optimizer.
  py::class_<MixedStrategy>(m, "MixedStrategy")
      .def(py::init(&MakeStrategy), py::arg("p_idle"), py::arg("p_hd"),
           py::arg("p_fd"))
      .def_readonly("p_idle", &MixedStrategy::p_idle)
      .def_readonly("p_hd", &MixedStrategy::p_hd)
      .def_readonly("p_fd", &MixedStrategy::p_fd)
      .def("__repr__", [](const MixedStrategy& s) {
        std::ostringstream o;
        o << "MixedStrategy(" << s.p_idle << ", " << s.p_hd << ", " << s.p_fd
          << ")";
        return o.str();
      });

  py::class_<PolicySolution>(m, "PolicySolution")
      .def_property_readonly("family", [](const PolicySolution& s) {
        return std::string(FamilyName(s.family));
      })
      .def_readonly("strategy", &PolicySolution::strategy)
      .def_readonly("rho", &PolicySolution::rho);

  m.def("mixed_objective", &MixedObjective, py::arg("strategy"), py::arg("lam"),
        py::arg("mu"));
  m.def("mixed_hd_optimum", &MixedHdOptimum, py::arg("mu"));
  m.def("mixed_fd_optimum", &MixedFdOptimum, py::arg("lam"), py::arg("mu"));
  m.def("mixed_hybrid_optimum", &MixedHybridOptimum, py::arg("lam"),
        py::arg("mu"));
  m.def("global_optimum", &GlobalOptimum, py::arg("lam"), py::arg("mu"));
  m.def("hybrid_limits", [](double lambda) {
    const HybridLimits l = HybridMuLimits(lambda);
    return py::make_tuple(l.lower, l.upper);
  }, py::arg("lam"));
  m.def("brute_force_optimum", [](double lambda, double mu, double step,
                                  int threads) {
    const BruteForceResult r = BruteForceOptimum(lambda, mu, step, threads);
    return py::make_tuple(r.strategy, r.rho);
  }, py::arg("lam"), py::arg("mu"), py::arg("step") = kDefaultBruteForceStep,
        py::arg("threads") = 1);

  // Monte Carlo.
  py::class_<SimEstimate>(m, "SimEstimate")
      .def_readonly("mean", &SimEstimate::mean)
      .def_readonly("half_width_95", &SimEstimate::half_width_95)
      .def_readonly("n_slots", &SimEstimate::n_slots)
      .def_readonly("seed", &SimEstimate::seed)
      .def_readonly("n_samples", &SimEstimate::n_samples)
      .def("sigma", &SimEstimate::sigma);

  m.def("estimate", [](const Scenario& s, TransmissionMode m1,
                       TransmissionMode m2, std::int64_t n_slots,
                       std::uint64_t seed, int threads) {
    SimOptions opt;
    opt.threads = threads;
    const ModeEstimate e = [&] {
      py::gil_scoped_release release;
      return Estimate(s, m1, m2, n_slots, seed, opt);
    }();
    py::dict out;
    out["success"] = py::make_tuple(e.success[0], e.success[1]);
    out["throughput"] = py::make_tuple(e.throughput[0], e.throughput[1]);
    return out;
  }, py::arg("scenario"), py::arg("mode1"), py::arg("mode2"),
        py::arg("n_slots"), py::arg("seed"), py::arg("threads") = 1);
  m.def("estimate_mixed", [](const Scenario& s, const MixedStrategy& s1,
                             const MixedStrategy& s2, std::int64_t n_slots,
                             std::uint64_t seed, int threads) {
    SimOptions opt;
    opt.threads = threads;
    py::gil_scoped_release release;
    const auto e = EstimateMixed(s, s1, s2, n_slots, seed, opt);
    return std::make_pair(e[0], e[1]);
  }, py::arg("scenario"), py::arg("strategy1"), py::arg("strategy2"),
        py::arg("n_slots"), py::arg("seed"), py::arg("threads") = 1);

  // Sweeps and the command line.
  m.def("sweep_preset", [](const std::string& name) {
    return TableToDict(SweepPreset(name));
  }, py::arg("name"), "Dict with 'columns' and 'rows' (tuples).");
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = RunCli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Returns (exit_code, stdout, stderr).");
}
