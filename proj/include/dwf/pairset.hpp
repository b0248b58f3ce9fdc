#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "dwf/bitmatrix.hpp"
#include "dwf/errors.hpp"
#include "dwf/group.hpp"
#include "dwf/rational.hpp"
#include "dwf/splitmix64.hpp"

namespace dwf {

enum class PairMode { bernoulli, block, full };

// Density target for generated pair sets. The density c is kept as an exact
// rational so the theorem's hypothesis |S| >= c*n^2 stays an integer
// comparison end to end.
struct DensitySpec {
  Rational c{1, 1};
  std::uint64_t seed = 0;
  PairMode mode = PairMode::full;
};

// The relation S subset of G x G as an n x n bit matrix. Row index is the
// first coordinate. Immutable in normal use once built; membership queries
// and row scans are safe concurrently.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::uint32_t n) : n_(n), bits_(n) {}

  std::uint32_t group_order() const { return n_; }
  std::uint64_t cardinality() const { return card_; }

  bool test(ElemId a, ElemId b) const { return bits_.test(a, b); }

  void set(ElemId a, ElemId b) {
    if (a >= n_ || b >= n_) throw PairOutOfRange("pair coordinate >= n");
    if (!bits_.test(a, b)) {
      bits_.set(a, b);
      ++card_;
    }
  }

  std::span<const std::uint64_t> row(ElemId a) const { return bits_.row(a); }
  std::uint64_t words_per_row() const { return bits_.words_per_row(); }

  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  std::uint32_t n_ = 0;
  BitMatrix bits_;
  std::uint64_t card_ = 0;
};

namespace detail {

// Smallest L in [0, n] with (L/n)^2 >= c, i.e. ceil(sqrt(c) * n) exactly.
inline std::uint32_t block_side(std::uint32_t n, const Rational& c) {
  auto ge = [&](std::uint64_t len) {
    return (unsigned __int128)len * len * c.den >=
           (unsigned __int128)c.num * n * n;
  };
  std::uint64_t guess = static_cast<std::uint64_t>(
      std::ceil(std::sqrt(static_cast<long double>(c.num) / c.den) * n));
  while (guess > 0 && ge(guess - 1)) --guess;
  while (!ge(guess)) ++guess;
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(guess, n));
}

}  // namespace detail

// Deterministic pair-set generation. bernoulli draws one SplitMix64 output
// per pair in row-major order from (0,0) and includes the pair iff
// output / 2^64 < c, compared exactly by cross-multiplication. block picks
// L x R with both index intervals of length ceil(sqrt(c)*n) at seeded
// offsets, wrapping mod n.
inline PairSet generate(const FiniteGroup& g, const DensitySpec& spec) {
  const std::uint32_t n = g.order();
  if (spec.c.num == 0 || spec.c > Rational(1, 1))
    throw std::invalid_argument("density must lie in (0, 1]");
  PairSet s(n);
  switch (spec.mode) {
    case PairMode::full:
      for (ElemId a = 0; a < n; ++a)
        for (ElemId b = 0; b < n; ++b) s.set(a, b);
      break;
    case PairMode::bernoulli: {
      SplitMix64 rng(spec.seed);
      for (ElemId a = 0; a < n; ++a)
        for (ElemId b = 0; b < n; ++b) {
          std::uint64_t out = rng.next();
          // out / 2^64 < num/den  <=>  out * den < num * 2^64
          if ((unsigned __int128)out * spec.c.den <
              ((unsigned __int128)spec.c.num << 64))
            s.set(a, b);
        }
      break;
    }
    case PairMode::block: {
      SplitMix64 rng(spec.seed);
      std::uint32_t len = detail::block_side(n, spec.c);
      std::uint32_t off_l = static_cast<std::uint32_t>(rng.below(n));
      std::uint32_t off_r = static_cast<std::uint32_t>(rng.below(n));
      for (std::uint32_t i = 0; i < len; ++i)
        for (std::uint32_t j = 0; j < len; ++j)
          s.set((off_l + i) % n, (off_r + j) % n);
      break;
    }
  }
  return s;
}

inline Rational density(const PairSet& s) {
  std::uint64_t n = s.group_order();
  if (n == 0) return Rational(0, 1);
  return Rational(s.cardinality(), n * n);
}

// ---- pair file format ----
// Line 1: "pairs n s". Then s lines "a b", strictly lexicographically
// increasing, with 0 <= a,b < n.

inline std::string save_pairs(const PairSet& s) {
  std::ostringstream out;
  out << "pairs " << s.group_order() << " " << s.cardinality() << "\n";
  for (ElemId a = 0; a < s.group_order(); ++a)
    for (ElemId b = 0; b < s.group_order(); ++b)
      if (s.test(a, b)) out << a << " " << b << "\n";
  return out.str();
}

inline PairSet load_pairs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  long long n = -1, count = -1;
  if (!(in >> tag >> n >> count) || tag != "pairs" || n < 1 || count < 0)
    throw MalformedHeader("pair file must start with 'pairs n s'");
  if (n > 65535) throw MalformedHeader("pair file order exceeds 65535");
  PairSet s(static_cast<std::uint32_t>(n));
  long long prev_a = -1, prev_b = -1;
  for (long long i = 0; i < count; ++i) {
    long long a, b;
    if (!(in >> a >> b))
      throw ParseError("expected " + std::to_string(count) +
                       " pairs, file ends after " + std::to_string(i));
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw PairOutOfRange("pair (" + std::to_string(a) + "," +
                           std::to_string(b) + ") outside [0," +
                           std::to_string(n) + ")");
    if (a == prev_a && b == prev_b)
      throw DuplicatePair("duplicate pair (" + std::to_string(a) + "," +
                          std::to_string(b) + ")");
    if (a < prev_a || (a == prev_a && b < prev_b))
      throw ParseError("pairs not in strictly increasing order");
    prev_a = a;
    prev_b = b;
    s.set(static_cast<ElemId>(a), static_cast<ElemId>(b));
  }
  long long extra;
  if (in >> extra) throw ParseError("trailing data after pair list");
  return s;
}

}  // namespace dwf
