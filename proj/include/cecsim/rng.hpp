#pragma once

#include <cstdint>

namespace cecsim {

/// SplitMix64 stream. One instance per Monte Carlo shot, derived purely from
/// (seed, shot index), so results do not depend on worker count or scheduling.
class RngStream {
 public:
  explicit RngStream(uint64_t state) : s_(state) {}

  static uint64_t mix(uint64_t v) {
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    v *= 0xc4ceb9fe1a85ec53ULL;
    v ^= v >> 33;
    return v;
  }

  uint64_t next() {
    s_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n) via multiply-shift.
  uint32_t next_below(uint32_t n) {
    return static_cast<uint32_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  uint64_t s_;
};

inline RngStream shot_stream(uint64_t seed, uint64_t shot) {
  return RngStream(RngStream::mix(seed ^ RngStream::mix(shot + 1)));
}

}  // namespace cecsim
