#pragma once

#include <cmath>
#include <cstdint>

namespace girthlab {

/// Counter-based random substream. Every (seed, stream) pair addresses an
/// independent sequence, so per-vertex rows (or per-sample runs) can be drawn
/// in any order, on any number of threads, and still come out bit-identical.
class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t stream) {
    state_ = mix(seed ^ 0x9e3779b97f4a7c15ull);
    state_ = mix(state_ + 0xbf58476d1ce4e5b9ull * (stream + 1));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., bound-1}, unbiased (rejection on the tail range).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool next_sign() { return (next_u64() >> 63) != 0; }

  /// Standard normal via Box-Muller. Used for statistical calibration only.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.28318530717958647692;
    spare_ = r * std::sin(two_pi * u2);
    has_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

  /// One-shot mix of (key, index); used to derive per-sample seeds.
  static std::uint64_t derive(std::uint64_t key, std::uint64_t index) {
    return mix(mix(key ^ 0x632be59bd9b4e019ull) + 0x9e3779b97f4a7c15ull * (index + 1));
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace girthlab
