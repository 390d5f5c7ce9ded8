#pragma once

#include <cstdint>

namespace outerprod {

// splitmix64: one 64-bit word of state, passes BigCrush, and cheap enough
// to give every trial its own generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform in [0, n) via 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Counter-based per-trial stream seed: a pure function of (seed, index), so
// trials are order-independent and a parallel run reproduces the sequential
// one bit for bit.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  return g.next();
}

}  // namespace outerprod
