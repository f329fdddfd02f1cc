#include "fdd2d/sweep.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fdd2d {
namespace {

std::size_t RowAt(const Table& t, std::string_view column, double value) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (std::abs(t.number(r, column) - value) < 1e-12) return r;
  }
  FAIL("no row with " << column << " = " << value);
  return 0;
}

Scenario Reference() {
  Scenario s;
  s.pair1 = {1.0, 10.0, 1e5};
  s.pair2 = {1.0, 10.0, 1e5};
  s.separation = 20.0;
  s.path_loss_exp = 4.0;
  s.sir_threshold = 3.0;
  return s;
}

TEST_CASE("grid") {
  const auto g = SweepGrid(0.0, 1.0, 0.01);
  REQUIRE(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[62] == 0.62);
  CHECK(SweepGrid(0.26, 1.0, 0.01).size() == 75);
  CHECK_THROWS_AS(SweepGrid(1.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(SweepGrid(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SweepGrid(0.0, 1.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(SweepGrid(0.0, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("fig3 columns and crossover") {
  const Table t = SweepPreset("fig3");
  CHECK(t.columns == std::vector<std::string>{"mu", "rho_hd_hd", "rho_hd_fd",
                                              "rho_fd_hd", "rho_fd_fd"});
  REQUIRE(t.rows.size() == 101);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double mu = t.number(r, "mu");
    CHECK(t.number(r, "rho_hd_hd") == doctest::Approx(mu));
    CHECK(t.number(r, "rho_hd_fd") == doctest::Approx(mu * mu));
    CHECK(t.number(r, "rho_fd_hd") == doctest::Approx(1.6 * mu));
    CHECK(t.number(r, "rho_fd_fd") == doctest::Approx(1.6 * mu * mu));
  }
  // 1 / (2 lambda) with lambda = 0.8 lies between grid points.
  const double x = 0.625;
  CHECK(x == doctest::Approx(1.6 * x * x));
  CHECK(t.number(RowAt(t, "mu", 0.62), "rho_hd_hd") >
        t.number(RowAt(t, "mu", 0.62), "rho_fd_fd"));
  CHECK(t.number(RowAt(t, "mu", 0.63), "rho_hd_hd") <
        t.number(RowAt(t, "mu", 0.63), "rho_fd_fd"));
}

TEST_CASE("fig4 limits") {
  const Table t = SweepPreset("fig4");
  const std::size_t last = RowAt(t, "lambda", 1.0);
  CHECK(t.number(last, "mu_lower") == 0.0);
  CHECK(t.number(last, "mu_upper") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(t.number(last, "hybrid_window") == 0.0);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double lambda = t.number(r, "lambda");
    const double lo = t.number(r, "mu_lower"), hi = t.number(r, "mu_upper");
    CHECK(lo == doctest::Approx(2 * (1 - lambda)));
    CHECK(hi == doctest::Approx(2 * lambda / (4 * lambda - 1)));
    const bool ordered = 0.0 < lo && lo < hi && hi < 1.0;
    CHECK((t.number(r, "hybrid_window") == 1.0) == ordered);
    CHECK(ordered == (lambda > 0.5 + 1e-12 && lambda < 1.0));
  }
}

TEST_CASE("fig5 and fig6 families") {
  const Table t5 = SweepPreset("fig5");
  CHECK(t5.rows.size() == 202);
  std::set<double> lambdas;
  const std::size_t family = t5.column("optimal_family");
  for (std::size_t r = 0; r < t5.rows.size(); ++r) {
    const double lambda = t5.number(r, "lambda");
    lambdas.insert(lambda);
    const double best = std::max({t5.number(r, "mixed_hd"), t5.number(r, "mixed_fd"),
                                  t5.number(r, "mixed_hybrid")});
    CHECK(t5.number(r, "optimal") == best);
    if (lambda == 1.0) {
      const auto& name = std::get<std::string>(t5.rows[r][family]);
      CHECK((name == "mixed-FD" || name == "pure-FD"));
    }
  }
  CHECK(lambdas == std::set<double>{0.6, 1.0});

  const Table t6 = SweepPreset("fig6");
  for (std::size_t r = 0; r < t6.rows.size(); ++r) {
    const auto& name = std::get<std::string>(t6.rows[r][family]);
    CHECK((name == "mixed-HD" || name == "pure-HD"));
    CHECK(t6.number(r, "optimal") == t6.number(r, "mixed_hd"));
  }
  // Mixed HD reaches 1 at mu = 1.
  CHECK(t6.number(RowAt(t6, "mu", 1.0), "mixed_hd") == 1.0);
}

TEST_CASE("fig7 at mu = 0") {
  const Table t = SweepPreset("fig7");
  const std::size_t r = RowAt(t, "mu", 0.0);
  CHECK(t.number(r, "mixed_fd") == 0.5);
  CHECK(t.number(r, "mixed_hd") == 0.25);
  CHECK(t.number(r, "pure_hd") == 0.0);
  CHECK(t.number(r, "pure_fd") == 0.0);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.number(i, "mixed_hd") >= t.number(i, "pure_hd"));
    CHECK(t.number(i, "mixed_fd") >= t.number(i, "pure_fd"));
  }
}

TEST_CASE("unknown preset") {
  CHECK_FALSE(IsPreset("fig8"));
  CHECK(IsPreset("fig5"));
  CHECK_THROWS_AS(SweepPreset("fig8"), std::invalid_argument);
}

TEST_CASE("csv format") {
  Table t{{"a", "b"}, {{1.0, std::string("x")}, {1.0 / 3.0, std::string("y")}}};
  std::ostringstream out;
  WriteCsv(t, out);
  CHECK(out.str() == "a,b\n1.00000000000,x\n0.333333333333,y\n");
  CHECK(FormatNumber(0.0) == "0.00000000000");
  CHECK(FormatNumber(1e-20) == "1.00000000000e-20");

  // Every data line has as many fields as the header.
  std::ostringstream fig;
  WriteCsv(SweepPreset("fig5"), fig);
  std::istringstream lines(fig.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "lambda,mu,mixed_hd,mixed_fd,mixed_hybrid,optimal,optimal_family");
  int n = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    ++n;
  }
  CHECK(n == 202);
}

TEST_CASE("custom sweeps") {
  SweepSpec mu_spec;
  mu_spec.variable = ParseSweepVariable("mu");
  mu_spec.lo = 0.0;
  mu_spec.hi = 1.0;
  mu_spec.step = 0.1;
  mu_spec.lambda = 0.8;
  Table t = RunSweep(mu_spec);
  CHECK(t.rows.size() == 11);
  CHECK(std::get<std::string>(t.rows[0][t.column("ne_mode")]) == "FD");
  CHECK(t.number(10, "ne_rho") == doctest::Approx(1.6));

  SweepSpec lambda_spec = mu_spec;
  lambda_spec.variable = SweepVariable::kLambda;
  lambda_spec.lo = 0.1;
  lambda_spec.mu = 0.5;
  t = RunSweep(lambda_spec);
  CHECK(t.rows.size() == 10);
  CHECK(std::get<std::string>(t.rows[0][t.column("ne_mode")]) == "HD");

  SweepSpec beta = mu_spec;
  beta.variable = ParseSweepVariable("beta_db");
  beta.lo = 30.0;
  beta.hi = 60.0;
  beta.step = 5.0;
  CHECK_THROWS_AS(RunSweep(beta), std::invalid_argument);
  beta.scenario = Reference();
  t = RunSweep(beta);
  REQUIRE(t.rows.size() == 7);
  // beta* = 44.77 dB: HD up to 40 dB, FD from 45 dB.
  CHECK(std::get<std::string>(t.rows[2][t.column("ne_mode1")]) == "HD");
  CHECK(std::get<std::string>(t.rows[3][t.column("ne_mode1")]) == "FD");
  for (std::size_t r = 1; r < t.rows.size(); ++r) {
    CHECK(t.number(r, "lambda1") > t.number(r - 1, "lambda1"));
  }

  SweepSpec d = beta;
  d.variable = ParseSweepVariable("D");
  d.lo = 10.0;
  d.hi = 40.0;
  t = RunSweep(d);
  for (std::size_t r = 1; r < t.rows.size(); ++r) {
    CHECK(t.number(r, "mu1") > t.number(r - 1, "mu1"));
    CHECK(t.number(r, "lambda1") == t.number(0, "lambda1"));
  }
  d.lo = 0.0;
  CHECK_THROWS_AS(RunSweep(d), std::invalid_argument);

  SweepSpec bad = mu_spec;
  bad.hi = 1.1;
  bad.step = 0.11;
  CHECK_THROWS_AS(RunSweep(bad), std::invalid_argument);
  bad = lambda_spec;
  bad.lo = 0.0;
  CHECK_THROWS_AS(RunSweep(bad), std::invalid_argument);
  CHECK_THROWS_AS(ParseSweepVariable("theta"), std::invalid_argument);
}

}  // namespace
}  // namespace fdd2d
