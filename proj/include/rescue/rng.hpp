#pragma once

#include <cstdint>

namespace rescue {

// Fixed 64-bit generator so simulations and scans are bit-reproducible
// across platforms and independent of how work is partitioned.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }
};

// Independent stream for a given index: lets round i of a simulation or
// trial i of a scan draw the same numbers no matter who runs it.
inline SplitMix64 derived_stream(std::uint64_t master, std::uint64_t index) {
  SplitMix64 mix(master ^ (0xd1342543de82ef95ull * (index + 1)));
  return SplitMix64(mix.next());
}

}  // namespace rescue
