#ifndef FDD2D_MONTECARLO_H_
#define FDD2D_MONTECARLO_H_

#include <array>
#include <cstdint>
#include <optional>

#include "fdd2d/channel_model.h"
#include "fdd2d/optimizer.h"

// Slot-level simulator of the fading model. Every random variate is a pure
// function of (seed, slot, variate key), so results are bit-identical for
// any split of the slot range across threads and for any evaluation order.

namespace fdd2d {

// Counter-based uniform source: output n of a SplitMix64 stream is
// mix(base + (n + 1) * gamma), which gives random access to any position.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed);

  std::uint64_t Bits(std::uint64_t slot, std::uint32_t key) const;
  // Uniform on (0, 1].
  double Uniform(std::uint64_t slot, std::uint32_t key) const;
  // Exponential with the given rate (mean 1 / rate), by inverse transform.
  double Exponential(std::uint64_t slot, std::uint32_t key, double rate) const;

  std::uint64_t seed() const { return seed_; }

  static constexpr std::uint32_t kKeysPerSlot = 64;

 private:
  std::uint64_t seed_;
  std::uint64_t base_;
};

// Optional true-distance geometry. Pair 1 is centred at the origin, pair 2
// at (D, 0); each pair is a segment of length R_i rotated by its angle.
// In HD mode node A sends to node B; in FD both send. Not used by the
// closed-form comparisons, which assume every cross link has length D.
struct Geometry {
  double orientation1 = 0.0;  // radians
  double orientation2 = 0.0;
};

struct SlotOutcome {
  std::array<int, 2> active_receivers{};
  std::array<std::array<bool, 2>, 2> success{};  // [pair][receiver]
  std::array<std::array<double, 2>, 2> sir{};    // +inf when interference-free

  int successes(int pair) const;
};

struct SimOptions {
  int threads = 1;
  std::optional<Geometry> geometry;
};

SlotOutcome SampleSlot(const Scenario& scenario, TransmissionMode mode1,
                       TransmissionMode mode2, const CounterRng& rng,
                       std::uint64_t slot,
                       const std::optional<Geometry>& geometry = std::nullopt);

struct SimEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::int64_t n_slots = 0;
  std::uint64_t seed = 0;
  // Bernoulli trials behind a success estimate (packets); n_slots for
  // throughput estimates.
  std::int64_t n_samples = 0;

  double sigma() const { return half_width_95 / 1.96; }
};

struct ModeEstimate {
  std::array<SimEstimate, 2> success;     // per-packet success, per pair
  std::array<SimEstimate, 2> throughput;  // successes per slot, per pair
  // Fraction of FD slots where both receivers of the pair succeeded.
  std::array<SimEstimate, 2> joint_success;
};

// Throws std::domain_error when n_slots < 1.
ModeEstimate Estimate(const Scenario& scenario, TransmissionMode mode1,
                      TransmissionMode mode2, std::int64_t n_slots,
                      std::uint64_t seed, const SimOptions& options = {});

// Each slot both pairs draw their mode independently from their strategy.
// Throws std::domain_error for off-simplex strategies or n_slots < 1.
std::array<SimEstimate, 2> EstimateMixed(const Scenario& scenario,
                                         const MixedStrategy& strategy1,
                                         const MixedStrategy& strategy2,
                                         std::int64_t n_slots,
                                         std::uint64_t seed,
                                         const SimOptions& options = {});

}  // namespace fdd2d

#endif  // FDD2D_MONTECARLO_H_
