#pragma once

#include <cstdint>

namespace dwf {

// SplitMix64, fixed-increment variant. One 64-bit word of state, one output
// per step. Every seeded random choice in the library goes through this
// generator so runs replay bit-identically across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() { return next(); }

  // Uniform draw from [0, n) by modulo reduction; n must be nonzero.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace dwf
