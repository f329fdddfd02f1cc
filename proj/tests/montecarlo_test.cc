#include "fdd2d/montecarlo.h"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdd2d {
namespace {

using M = TransmissionMode;

constexpr std::int64_t kSlots = 200000;

// lambda = 1/1.3, mu = 16/19.
Scenario Reference() {
  Scenario s;
  s.pair1 = {1.0, 10.0, 1e5};
  s.pair2 = {1.0, 10.0, 1e5};
  s.separation = 20.0;
  s.path_loss_exp = 4.0;
  s.sir_threshold = 3.0;
  return s;
}

// theta R^alpha / beta = 2/3 and tau = 1, so lambda = 0.6 and mu = 0.5.
Scenario Mid() {
  Scenario s;
  s.pair1 = {1.0, 1.0, 1.5};
  s.pair2 = {1.0, 1.0, 1.5};
  s.separation = 1.0;
  s.path_loss_exp = 2.0;
  s.sir_threshold = 1.0;
  return s;
}

Scenario Lopsided() {
  Scenario s;
  s.pair1 = {1.0, 10.0, 1e5};
  s.pair2 = {2.0, 8.0, 1e4};
  s.separation = 25.0;
  s.path_loss_exp = 3.5;
  s.sir_threshold = 3.0;
  return s;
}

bool Within(const SimEstimate& e, double expected, double sigmas = 3.0) {
  return std::abs(e.mean - expected) <= sigmas * e.sigma();
}

bool Same(const SimEstimate& a, const SimEstimate& b) {
  return a.mean == b.mean && a.half_width_95 == b.half_width_95 &&
         a.n_slots == b.n_slots && a.n_samples == b.n_samples &&
         a.seed == b.seed;
}

bool Same(const ModeEstimate& a, const ModeEstimate& b) {
  for (int p = 0; p < 2; ++p) {
    if (!Same(a.success[p], b.success[p]) ||
        !Same(a.throughput[p], b.throughput[p]) ||
        !Same(a.joint_success[p], b.joint_success[p])) {
      return false;
    }
  }
  return true;
}

TEST_CASE("counter rng") {
  const CounterRng rng(42);
  CHECK(rng.Bits(5, 3) == CounterRng(42).Bits(5, 3));
  CHECK(rng.Bits(5, 3) != rng.Bits(5, 4));
  CHECK(rng.Bits(5, 3) != rng.Bits(6, 3));
  CHECK(rng.Bits(5, 3) != CounterRng(43).Bits(5, 3));
  double sum = 0.0, sum_exp = 0.0;
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) {
    const double u = rng.Uniform(static_cast<std::uint64_t>(i), 0);
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    sum += u;
    sum_exp += rng.Exponential(static_cast<std::uint64_t>(i), 1, 4.0);
  }
  // Standard errors: 0.29/sqrt(N) and 0.25/sqrt(N).
  CHECK(std::abs(sum / kN - 0.5) < 4 * 0.289 / std::sqrt(kN));
  CHECK(std::abs(sum_exp / kN - 0.25) < 4 * 0.25 / std::sqrt(kN));
}

TEST_CASE("sample slot structure") {
  const Scenario s = Reference();
  const CounterRng rng(1);
  for (std::uint64_t slot = 0; slot < 500; ++slot) {
    for (M a : kAllModes) {
      for (M b : kAllModes) {
        const SlotOutcome o = SampleSlot(s, a, b, rng, slot);
        CHECK(o.active_receivers[0] == PacketsSent(a));
        CHECK(o.active_receivers[1] == PacketsSent(b));
        for (int p = 0; p < 2; ++p) {
          for (int r = 0; r < o.active_receivers[p]; ++r) {
            CHECK(o.sir[p][r] >= 0.0);
            CHECK(o.success[p][r] == (o.sir[p][r] > s.sir_threshold));
          }
        }
      }
    }
    // No interference and no self-interference: the SIR is unbounded.
    const SlotOutcome alone = SampleSlot(s, M::kHD, M::kIdle, rng, slot);
    CHECK(std::isinf(alone.sir[0][0]));
    CHECK(alone.success[0][0]);
  }
}

TEST_CASE("idle and interference-free pairs") {
  const ModeEstimate idle = Estimate(Reference(), M::kIdle, M::kFD, kSlots, 3);
  CHECK(idle.throughput[0].mean == 0.0);
  CHECK(idle.success[0].n_samples == 0);
  const ModeEstimate hd = Estimate(Reference(), M::kHD, M::kIdle, kSlots, 3);
  CHECK(hd.success[0].mean == 1.0);
  CHECK(hd.throughput[0].mean == 1.0);
  CHECK(hd.throughput[1].mean == 0.0);
}

TEST_CASE("closed-form branches within 3 sigma") {
  const double lambda = 1.0 / 1.3, mu = 16.0 / 19.0;
  ModeEstimate e = Estimate(Reference(), M::kFD, M::kIdle, kSlots, 11);
  CHECK(Within(e.success[0], lambda));
  e = Estimate(Reference(), M::kHD, M::kHD, kSlots, 12);
  CHECK(Within(e.success[0], mu));
  CHECK(Within(e.success[1], mu));
  e = Estimate(Reference(), M::kFD, M::kFD, kSlots, 13);
  CHECK(Within(e.throughput[0], 2.0 * lambda * mu * mu));
  CHECK(Within(e.throughput[1], 2.0 * lambda * mu * mu));
  CHECK(2.0 * lambda * mu * mu == doctest::Approx(1.090986).epsilon(1e-6));
  e = Estimate(Reference(), M::kHD, M::kFD, kSlots, 14);
  CHECK(Within(e.success[0], mu * mu));
  CHECK(Within(e.success[1], lambda * mu));

  const DerivedParams p = DeriveParams(Lopsided());
  for (M a : kAllModes) {
    for (M b : kAllModes) {
      e = Estimate(Lopsided(), a, b, kSlots, 20);
      for (int i = 0; i < 2; ++i) {
        const M self = i == 0 ? a : b;
        const M other = i == 0 ? b : a;
        if (self == M::kIdle) continue;
        const double expected = SuccessProbability(
            self, PacketsSent(other), p.lambda(i), p.mu(i));
        CHECK(Within(e.success[i], expected));
        CHECK(Within(e.throughput[i],
                     PairThroughput(self, other, p.lambda(i), p.mu(i))));
      }
    }
  }
}

TEST_CASE("ci half widths") {
  const ModeEstimate e = Estimate(Reference(), M::kHD, M::kFD, 1000, 5);
  const SimEstimate& s = e.success[0];
  CHECK(s.n_slots == 1000);
  CHECK(s.n_samples == 1000);
  CHECK(s.seed == 5);
  CHECK(s.half_width_95 ==
        doctest::Approx(1.96 * std::sqrt(s.mean * (1 - s.mean) / 1000.0)));
  CHECK(e.success[1].n_samples == 2000);
}

TEST_CASE("fd receivers fail independently") {
  const double lambda = 1.0 / 1.3, mu = 16.0 / 19.0;
  const ModeEstimate e = Estimate(Reference(), M::kFD, M::kFD, kSlots, 21);
  for (int p = 0; p < 2; ++p) {
    const double marginal = e.success[p].mean;
    CHECK(Within(e.joint_success[p], marginal * marginal, 4.0));
    CHECK(Within(e.joint_success[p], std::pow(lambda * mu * mu, 2)));
  }
}

TEST_CASE("seed determinism and partition invariance") {
  const ModeEstimate a = Estimate(Lopsided(), M::kFD, M::kHD, 50001, 99);
  const ModeEstimate b = Estimate(Lopsided(), M::kFD, M::kHD, 50001, 99);
  CHECK(Same(a, b));
  for (int threads : {2, 3, 7, 16}) {
    SimOptions opt;
    opt.threads = threads;
    CHECK(Same(a, Estimate(Lopsided(), M::kFD, M::kHD, 50001, 99, opt)));
  }
  const ModeEstimate c = Estimate(Lopsided(), M::kFD, M::kHD, 50001, 100);
  CHECK(c.success[0].mean != a.success[0].mean);
}

TEST_CASE("swapping the pairs keeps the marginals") {
  Scenario swapped = Lopsided();
  std::swap(swapped.pair1, swapped.pair2);
  const ModeEstimate a = Estimate(Lopsided(), M::kFD, M::kHD, kSlots, 7);
  SimOptions opt;
  opt.threads = 4;
  const ModeEstimate b = Estimate(swapped, M::kHD, M::kFD, kSlots, 8, opt);
  for (int p = 0; p < 2; ++p) {
    const SimEstimate& x = a.success[p];
    const SimEstimate& y = b.success[1 - p];
    const double sigma = std::hypot(x.sigma(), y.sigma());
    CHECK(std::abs(x.mean - y.mean) <= 3.0 * sigma);
  }
}

TEST_CASE("mixed strategies") {
  const MixedStrategy third{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto mixed = EstimateMixed(Mid(), third, third, kSlots, 31);
  const DerivedParams p = DeriveParams(Mid());
  CHECK(p.lambda1 == doctest::Approx(0.6));
  CHECK(p.mu1 == doctest::Approx(0.5));
  CHECK(MixedObjective(third, 0.6, 0.5) == doctest::Approx(0.427778).epsilon(1e-6));
  CHECK(Within(mixed[0], MixedObjective(third, p.lambda1, p.mu1)));
  CHECK(Within(mixed[1], MixedObjective(third, p.lambda1, p.mu1)));

  const MixedStrategy hd{0.0, 1.0, 0.0};
  const auto degenerate = EstimateMixed(Reference(), hd, hd, 20000, 4);
  const ModeEstimate pure = Estimate(Reference(), M::kHD, M::kHD, 20000, 4);
  CHECK(Same(degenerate[0], pure.throughput[0]));
  CHECK(Same(degenerate[1], pure.throughput[1]));

  const MixedStrategy idle{1.0, 0.0, 0.0};
  CHECK(EstimateMixed(Reference(), idle, third, 20000, 4)[0].mean == 0.0);

  SimOptions opt;
  opt.threads = 5;
  const auto split = EstimateMixed(Mid(), third, third, kSlots, 31, opt);
  CHECK(Same(split[0], mixed[0]));
  CHECK(Same(split[1], mixed[1]));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(Estimate(Reference(), M::kHD, M::kHD, 0, 1), std::domain_error);
  CHECK_THROWS_AS(Estimate(Reference(), M::kHD, M::kHD, -3, 1), std::domain_error);
  const MixedStrategy ok{0.2, 0.3, 0.5};
  const MixedStrategy bad{0.2, 0.3, 0.6};
  const MixedStrategy negative{-0.1, 0.6, 0.5};
  CHECK_THROWS_AS(EstimateMixed(Reference(), bad, ok, 10, 1), std::domain_error);
  CHECK_THROWS_AS(EstimateMixed(Reference(), ok, negative, 10, 1),
                  std::domain_error);
  CHECK_THROWS_AS(EstimateMixed(Reference(), ok, ok, 0, 1), std::domain_error);
}

TEST_CASE("true geometry only lengthens cross links when pairs are upright") {
  // Both pairs perpendicular to the line of centres: every cross distance is
  // at least D, so with identical draws no receiver does worse.
  const Scenario s = Reference();
  const Geometry g{std::numbers::pi / 2, std::numbers::pi / 2};
  const CounterRng rng(9);
  int strictly_better = 0;
  for (std::uint64_t slot = 0; slot < 2000; ++slot) {
    const SlotOutcome nominal = SampleSlot(s, M::kFD, M::kFD, rng, slot);
    const SlotOutcome real = SampleSlot(s, M::kFD, M::kFD, rng, slot, g);
    for (int p = 0; p < 2; ++p) {
      for (int r = 0; r < 2; ++r) {
        CHECK(real.sir[p][r] >= nominal.sir[p][r]);
        strictly_better += real.sir[p][r] > nominal.sir[p][r];
      }
    }
  }
  CHECK(strictly_better > 0);
}

}  // namespace
}  // namespace fdd2d
