#pragma once

#include <cstdint>

#include "btc/bigint.hpp"

namespace btc {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state advanced by the golden
/// gamma and finalized with two xor-shift-multiply rounds. Used everywhere a
/// seeded stream is needed; substreams derive through split().
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Independent substream keyed off the next stream value.
  SplitMix64 split() { return SplitMix64(next() ^ 0x5851f42d4c957f2dULL); }

  /// Unbiased uniform draw in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform in [0, bound) for arbitrary-precision bounds, by drawing
  /// fixed-width chunks and rejecting overshoot.
  BigCount below_big(const BigCount& bound) {
    if (bound <= 0) return 0;
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
    for (;;) {
      BigCount x = 0;
      for (unsigned got = 0; got < bits; got += 64) {
        x <<= 64;
        x |= BigCount(next());
      }
      x >>= (64 - bits % 64) % 64;
      if (x < bound) return x;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace btc
