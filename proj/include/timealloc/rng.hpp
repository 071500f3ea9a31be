#pragma once
// Counter-based uniform variate stream.
//
// Draw n of a stream is mix(key + (n+1) * gamma) where mix is the SplitMix64
// finalizer and key is derived from (seed, stream). Identical (seed, stream)
// pairs reproduce the same variate sequence on every platform; distinct
// replicas get decorrelated streams with no shared state. next() never
// returns 0 or 1 exactly.

#include <cstdint>

namespace timealloc {

class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + kGamma))) {}

  std::uint64_t next_raw() {
    counter_ += kGamma;
    return mix(key_ + counter_);
  }

  // Uniform double strictly inside (0, 1).
  double next() {
    const std::uint64_t bits = next_raw() >> 11;  // top 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Replica k of a seeded experiment runs on the stream seeded seed + k, so a
  // single replica can be reproduced standalone from its CSV seed column.
  static UniformStream for_replica(std::uint64_t base_seed, std::uint64_t replica) {
    return UniformStream(base_seed + replica);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace timealloc
