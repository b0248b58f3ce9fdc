#pragma once

// Shared fixtures for the test suites: an independent SplitMix64
// transcription, table builders for the small metacyclic groups, and naive
// counting helpers. Everything here is deliberately written from scratch so
// it can serve as an oracle for the library paths it checks.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "dwf/group.hpp"

namespace test_support {

// Reference SplitMix64, transcribed independently of dwf::SplitMix64.
class RefSplitMix {
 public:
  explicit RefSplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  std::uint64_t state_;
};

// Cayley table text for the metacyclic group
//   < a, b | a^n = e, b^2 = a^s, b a b^-1 = a^r >
// with elements a^i b^j encoded as id = i + n*j. Covers the dihedral groups
// (s = 0, r = n-1), Q_8 (n=4, s=2, r=3) and Dic_3 (n=6, s=3, r=5). The
// loader's exhaustive associativity check doubles as a consistency check on
// (n, s, r).
inline std::string metacyclic_table(std::uint32_t n, std::uint32_t s,
                                    std::uint32_t r) {
  auto mul = [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
    std::uint32_t i = x % n, j = x / n;
    std::uint32_t k = y % n, l = y / n;
    if (j == 0) return (i + k) % n + n * l;
    // a^i b * a^k b^l = a^{i + r*k} b^{1+l}
    std::uint32_t base = (i + r * k) % n;
    if (l == 0) return base + n;
    return (base + s) % n;  // b^2 = a^s
  };
  std::ostringstream out;
  out << 2 * n << "\n";
  for (std::uint32_t x = 0; x < 2 * n; ++x) {
    for (std::uint32_t y = 0; y < 2 * n; ++y) {
      if (y) out << ' ';
      out << mul(x, y);
    }
    out << "\n";
  }
  return out.str();
}

// Order-5 loop with identity 0 that fails associativity: (1*1)*2 = 2 but
// 1*(1*2) = 4.
inline std::string nonassociative_loop_table() {
  return
      "5\n"
      "0 1 2 3 4\n"
      "1 0 3 4 2\n"
      "2 3 4 0 1\n"
      "3 4 1 2 0\n"
      "4 2 0 1 3\n";
}

// Direct double-loop count of triples spanned by an element set.
inline std::uint64_t naive_span_count(const dwf::FiniteGroup& g,
                                      const std::vector<dwf::ElemId>& set,
                                      const auto& pair_test) {
  std::uint64_t c = 0;
  for (dwf::ElemId u : set)
    for (dwf::ElemId v : set) {
      if (!pair_test(u, v)) continue;
      dwf::ElemId uv = g.mul(u, v);
      for (dwf::ElemId e : set)
        if (e == uv) {
          ++c;
          break;
        }
    }
  return c;
}

// Permutations used repeatedly in the group tests (0-based images).
inline std::vector<std::uint32_t> perm_swap01(std::uint32_t degree) {
  std::vector<std::uint32_t> p(degree);
  for (std::uint32_t i = 0; i < degree; ++i) p[i] = i;
  p[0] = 1;
  p[1] = 0;
  return p;
}

inline std::vector<std::uint32_t> perm_cycle(std::uint32_t degree,
                                             std::uint32_t first,
                                             std::uint32_t last) {
  // cycle (first first+1 ... last), other points fixed
  std::vector<std::uint32_t> p(degree);
  for (std::uint32_t i = 0; i < degree; ++i) p[i] = i;
  for (std::uint32_t i = first; i < last; ++i) p[i] = i + 1;
  p[last] = first;
  return p;
}

}  // namespace test_support
