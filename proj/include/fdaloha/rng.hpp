#pragma once

// Counter-based pseudorandom stream built from SplitMix64 finalizer
// rounds: every (seed, slot, channel) triple maps to one draw as a pure
// function of the key. Draws can be generated in any order, skipped, or
// recomputed without disturbing the stream, which is what makes the
// simulator reproducible bit for bit.

#include <cmath>
#include <cstdint>

namespace fdaloha {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_mixed_(splitmix64(seed)) {}

  std::uint64_t bits(std::uint64_t slot, std::uint64_t channel) const {
    return splitmix64(splitmix64(seed_mixed_ ^ splitmix64(slot)) ^ splitmix64(channel));
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform(std::uint64_t slot, std::uint64_t channel) const {
    return static_cast<double>(bits(slot, channel) >> 11) * 0x1.0p-53;
  }

  // Unit-mean exponential via the inverse CDF; finite for every key.
  double exponential(std::uint64_t slot, std::uint64_t channel) const {
    return -std::log1p(-uniform(slot, channel));
  }

 private:
  std::uint64_t seed_mixed_;
};

}  // namespace fdaloha
