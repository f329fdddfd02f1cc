#include "fdd2d/montecarlo.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.h"

namespace fdd2d {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Variate keys inside one slot.
constexpr std::uint32_t kSignal = 0;
constexpr std::uint32_t kExternal0 = 1;  // one per interfering packet
constexpr std::uint32_t kSelf = 3;
constexpr std::uint32_t kModeDraw = 32;

constexpr std::uint32_t ReceiverKey(int pair, int receiver, std::uint32_t var) {
  return static_cast<std::uint32_t>(pair * 16 + receiver * 8) + var;
}

struct Point {
  double x = 0.0, y = 0.0;
};

// Node 0 is A, node 1 is B.
Point NodePosition(const Scenario& s, const Geometry& g, int pair, int node) {
  const double angle = pair == 0 ? g.orientation1 : g.orientation2;
  const double half = 0.5 * s.pair(pair).intra_distance;
  const double sign = node == 0 ? -1.0 : 1.0;
  const double cx = pair == 0 ? 0.0 : s.separation;
  return {cx + sign * half * std::cos(angle), sign * half * std::sin(angle)};
}

double CrossDistance(const Scenario& s, const std::optional<Geometry>& g,
                     int rx_pair, int rx_index, int tx_index) {
  if (!g) return s.separation;
  // Receiver 0 is node B (fed by A); receiver 1 is node A. Transmitter 0 of
  // the other pair is its node A, transmitter 1 its node B.
  const Point rx = NodePosition(s, *g, rx_pair, rx_index == 0 ? 1 : 0);
  const Point tx = NodePosition(s, *g, 1 - rx_pair, tx_index);
  return std::hypot(rx.x - tx.x, rx.y - tx.y);
}

TransmissionMode DrawMode(const MixedStrategy& s, double u) {
  if (u <= s.p_idle) return TransmissionMode::kIdle;
  if (u > 1.0 - s.p_fd) return TransmissionMode::kFD;
  return TransmissionMode::kHD;
}

void CheckSlots(std::int64_t n_slots) {
  if (n_slots < 1) throw std::domain_error("n_slots must be at least 1");
}

struct Counts {
  std::array<std::int64_t, 2> successes{};
  std::array<std::int64_t, 2> attempts{};
  std::array<std::int64_t, 2> squares{};  // sum of per-slot successes^2
  std::array<std::int64_t, 2> fd_slots{};
  std::array<std::int64_t, 2> joint{};

  void Add(const SlotOutcome& o) {
    for (int p = 0; p < 2; ++p) {
      const int k = o.successes(p);
      successes[p] += k;
      attempts[p] += o.active_receivers[p];
      squares[p] += k * k;
      if (o.active_receivers[p] == 2) {
        ++fd_slots[p];
        if (k == 2) ++joint[p];
      }
    }
  }
  void Merge(const Counts& c) {
    for (int p = 0; p < 2; ++p) {
      successes[p] += c.successes[p];
      attempts[p] += c.attempts[p];
      squares[p] += c.squares[p];
      fd_slots[p] += c.fd_slots[p];
      joint[p] += c.joint[p];
    }
  }
};

SimEstimate Bernoulli(std::int64_t hits, std::int64_t trials,
                      std::int64_t n_slots, std::uint64_t seed) {
  SimEstimate e;
  e.n_slots = n_slots;
  e.seed = seed;
  e.n_samples = trials;
  if (trials > 0) {
    e.mean = static_cast<double>(hits) / static_cast<double>(trials);
    e.half_width_95 =
        1.96 * std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  }
  return e;
}

SimEstimate SampleMean(std::int64_t sum, std::int64_t sum_sq,
                       std::int64_t n_slots, std::uint64_t seed) {
  SimEstimate e;
  e.n_slots = n_slots;
  e.seed = seed;
  e.n_samples = n_slots;
  const double n = static_cast<double>(n_slots);
  e.mean = static_cast<double>(sum) / n;
  if (n_slots > 1) {
    const double var =
        std::max(0.0, (static_cast<double>(sum_sq) - n * e.mean * e.mean) /
                          (n - 1.0));
    e.half_width_95 = 1.96 * std::sqrt(var / n);
  }
  return e;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed) : seed_(seed), base_(Mix64(seed)) {}

std::uint64_t CounterRng::Bits(std::uint64_t slot, std::uint32_t key) const {
  const std::uint64_t counter = slot * kKeysPerSlot + key;
  return Mix64(base_ + (counter + 1) * kGamma);
}

double CounterRng::Uniform(std::uint64_t slot, std::uint32_t key) const {
  return static_cast<double>((Bits(slot, key) >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::Exponential(std::uint64_t slot, std::uint32_t key,
                               double rate) const {
  return -std::log(Uniform(slot, key)) / rate;
}

int SlotOutcome::successes(int pair) const {
  int k = 0;
  for (int r = 0; r < active_receivers[pair]; ++r) k += success[pair][r];
  return k;
}

SlotOutcome SampleSlot(const Scenario& s, TransmissionMode mode1,
                       TransmissionMode mode2, const CounterRng& rng,
                       std::uint64_t slot,
                       const std::optional<Geometry>& geometry) {
  const TransmissionMode modes[2] = {mode1, mode2};
  const double alpha = s.path_loss_exp;
  SlotOutcome out;
  for (int p = 0; p < 2; ++p) {
    const int q = 1 - p;
    const PairConfig& own = s.pair(p);
    const PairConfig& other = s.pair(q);
    const int receivers = PacketsSent(modes[p]);
    const int interferers = PacketsSent(modes[q]);
    out.active_receivers[p] = receivers;
    for (int r = 0; r < receivers; ++r) {
      const double h = rng.Exponential(slot, ReceiverKey(p, r, kSignal), 1.0);
      const double signal = own.tx_power * h * std::pow(own.intra_distance, -alpha);
      double interference = 0.0;
      for (int t = 0; t < interferers; ++t) {
        const double fade = rng.Exponential(
            slot, ReceiverKey(p, r, kExternal0 + static_cast<std::uint32_t>(t)),
            1.0);
        interference += other.tx_power * fade *
                        std::pow(CrossDistance(s, geometry, p, r, t), -alpha);
      }
      if (modes[p] == TransmissionMode::kFD) {
        const double kappa = rng.Exponential(slot, ReceiverKey(p, r, kSelf),
                                             own.si_attenuation);
        interference += kappa * own.tx_power;
      }
      const double sir = interference > 0.0
                             ? signal / interference
                             : std::numeric_limits<double>::infinity();
      out.sir[p][r] = sir;
      out.success[p][r] = sir > s.sir_threshold;
    }
  }
  return out;
}

ModeEstimate Estimate(const Scenario& scenario, TransmissionMode mode1,
                      TransmissionMode mode2, std::int64_t n_slots,
                      std::uint64_t seed, const SimOptions& options) {
  CheckSlots(n_slots);
  Validate(scenario);
  const CounterRng rng(seed);
  const auto partial = internal::MapChunks<Counts>(
      n_slots, options.threads, [&](std::int64_t begin, std::int64_t end) {
        Counts c;
        for (std::int64_t slot = begin; slot < end; ++slot) {
          c.Add(SampleSlot(scenario, mode1, mode2, rng,
                           static_cast<std::uint64_t>(slot), options.geometry));
        }
        return c;
      });
  Counts total;
  for (const Counts& c : partial) total.Merge(c);

  ModeEstimate out;
  for (int p = 0; p < 2; ++p) {
    out.success[p] =
        Bernoulli(total.successes[p], total.attempts[p], n_slots, seed);
    out.throughput[p] =
        SampleMean(total.successes[p], total.squares[p], n_slots, seed);
    out.joint_success[p] =
        Bernoulli(total.joint[p], total.fd_slots[p], n_slots, seed);
  }
  return out;
}

std::array<SimEstimate, 2> EstimateMixed(const Scenario& scenario,
                                         const MixedStrategy& strategy1,
                                         const MixedStrategy& strategy2,
                                         std::int64_t n_slots,
                                         std::uint64_t seed,
                                         const SimOptions& options) {
  CheckSlots(n_slots);
  Validate(scenario);
  ValidateStrategy(strategy1);
  ValidateStrategy(strategy2);
  const CounterRng rng(seed);
  const auto partial = internal::MapChunks<Counts>(
      n_slots, options.threads, [&](std::int64_t begin, std::int64_t end) {
        Counts c;
        for (std::int64_t i = begin; i < end; ++i) {
          const auto slot = static_cast<std::uint64_t>(i);
          const TransmissionMode m1 =
              DrawMode(strategy1, rng.Uniform(slot, kModeDraw + 0));
          const TransmissionMode m2 =
              DrawMode(strategy2, rng.Uniform(slot, kModeDraw + 1));
          c.Add(SampleSlot(scenario, m1, m2, rng, slot, options.geometry));
        }
        return c;
      });
  Counts total;
  for (const Counts& c : partial) total.Merge(c);
  return {SampleMean(total.successes[0], total.squares[0], n_slots, seed),
          SampleMean(total.successes[1], total.squares[1], n_slots, seed)};
}

}  // namespace fdd2d
