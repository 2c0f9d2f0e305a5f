// SPDX-License-Identifier: Apache-2.0
//
// Seedable counter-style random generator with independent substreams:
// "splitmix64-substream-v1".
//
// Substream i of seed s starts from state mix64(s + GAMMA*(i+1)); each draw
// advances the state by GAMMA and returns mix64(state), where mix64 is the
// SplitMix64 finalizer and GAMMA the 64-bit golden ratio. Scrambling the
// starting point keeps distinct substreams off each other's orbits, so
// substreams can be consumed in any order (one per protocol pulse) and the
// aggregate is reproducible bit for bit.

#pragma once

#include <cstdint>

namespace qpccm {

inline constexpr const char* kRngId = "splitmix64-substream-v1";

class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(seed + kGamma * (stream + 1))) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace qpccm
