#pragma once

#include <cstdint>
#include <string_view>

#include "symplectica/integer.hpp"

namespace symplectica {

/// SplitMix64 (Steele, Lea, Flood 2014). 64 bits of state, fully specified,
/// so seeded streams agree across platforms and language ports. Bounded
/// draws use plain modular reduction of successive 64-bit outputs; the
/// reduction rule is part of the stream definition.
class SplitMix64 {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Value in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Value in [0, bound); bound > 0. Concatenates enough 64-bit words to
  /// exceed the bound by 64 bits, then reduces.
  Int below(const Int& bound);

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace symplectica
