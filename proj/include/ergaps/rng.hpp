#pragma once

#include <cstdint>

namespace ergaps {

inline std::uint64_t splitmix64_step(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based splitmix64 stream. Output is a pure function of (seed, counter),
// so streams are reproducible across platforms and thread schedules.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return splitmix64_step(state_);
  }

  // uniform in [0, 1), 53 random bits
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Seed for block `b` of a run seeded with `seed`; blocks get decorrelated streams.
inline std::uint64_t block_seed(std::uint64_t seed, std::uint64_t b) {
  return splitmix64_step(seed + 0x9E3779B97F4A7C15ull * (b + 1));
}

}  // namespace ergaps
