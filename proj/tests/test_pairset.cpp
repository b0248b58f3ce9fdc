#include <cstdint>

#include "catch_amalgamated.hpp"
#include "dwf/pairset.hpp"
#include "test_support.hpp"

using dwf::FiniteGroup;
using dwf::PairMode;
using dwf::PairSet;
using dwf::Rational;

TEST_CASE("splitmix64 matches reference vectors") {
  SECTION("frozen outputs") {
    dwf::SplitMix64 rng0(0);
    REQUIRE(rng0.next() == 0xE220A8397B1DCDAFULL);
    REQUIRE(rng0.next() == 0x6E789E6AA1B965F4ULL);
    REQUIRE(rng0.next() == 0x06C45D188009454FULL);
    dwf::SplitMix64 rng1(1234567);
    REQUIRE(rng1.next() == 6457827717110365317ULL);
    REQUIRE(rng1.next() == 3203168211198807973ULL);
    REQUIRE(rng1.next() == 9817491932198370423ULL);
  }
  SECTION("agrees with the independent transcription") {
    for (std::uint64_t seed : {0ULL, 42ULL, 0xDEADBEEFULL}) {
      dwf::SplitMix64 a(seed);
      test_support::RefSplitMix b(seed);
      for (int i = 0; i < 64; ++i) REQUIRE(a.next() == b());
    }
  }
}

TEST_CASE("pair set generation") {
  SECTION("full mode fills n^2 pairs") {
    auto g = FiniteGroup::cyclic_product({6});
    auto s = dwf::generate(g, {Rational(1, 1), 0, PairMode::full});
    REQUIRE(s.cardinality() == 36);
    REQUIRE(dwf::density(s) == Rational(1, 1));
  }
  SECTION("bernoulli with c = 1 never rejects") {
    auto g = FiniteGroup::cyclic_product({9});
    auto s = dwf::generate(g, {Rational(1, 1), 7, PairMode::bernoulli});
    REQUIRE(s.cardinality() == 81);
  }
  SECTION("bernoulli replays the reference generator") {
    auto g = FiniteGroup::cyclic_product({16});
    auto s = dwf::generate(g, {Rational(1, 2), 42, PairMode::bernoulli});
    // independent replay of the same row-major scan
    test_support::RefSplitMix ref(42);
    std::uint64_t expected = 0;
    for (std::uint32_t a = 0; a < 16; ++a)
      for (std::uint32_t b = 0; b < 16; ++b) {
        std::uint64_t out = ref();
        bool member = (unsigned __int128)out * 2 < ((unsigned __int128)1 << 64);
        if (member) ++expected;
        REQUIRE(s.test(a, b) == member);
      }
    REQUIRE(s.cardinality() == expected);
    REQUIRE(s.cardinality() == 117);  // frozen from the reference replay
  }
  SECTION("generation is deterministic") {
    auto g = FiniteGroup::cyclic_product({32});
    dwf::DensitySpec spec{Rational(1, 3), 99, PairMode::bernoulli};
    REQUIRE(dwf::generate(g, spec) == dwf::generate(g, spec));
  }
  SECTION("block mode covers an exact ceil(sqrt(c)*n) square") {
    auto g = FiniteGroup::cyclic_product({16});
    auto s = dwf::generate(g, {Rational(1, 4), 7, PairMode::block});
    REQUIRE(s.cardinality() == 64);  // side 8
    // seeded offsets for seed 7 are (7, 12)
    REQUIRE(s.test(7, 12));
    REQUIRE_FALSE(s.test(6, 12));
  }
  SECTION("invalid density is rejected") {
    auto g = FiniteGroup::cyclic_product({4});
    REQUIRE_THROWS_AS(
        dwf::generate(g, {Rational(0, 1), 0, PairMode::bernoulli}),
        std::invalid_argument);
  }
  SECTION("empirical bernoulli density stays near c (warning only)") {
    auto g = FiniteGroup::cyclic_product({256});
    const double c = 0.5;
    const double bound = 4.0 * std::sqrt(c * (1 - c)) / 256.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto s = dwf::generate(g, {Rational(1, 2), seed, PairMode::bernoulli});
      double emp = dwf::density(s).approx();
      if (std::abs(emp - c) > bound)
        WARN("bernoulli density drifted: seed " << seed << " emp " << emp);
    }
  }
}

TEST_CASE("density is exact") {
  PairSet s(6);
  REQUIRE(dwf::density(s) == Rational(0, 1));
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = 0; b < 6; ++b) s.set(a, b);
  REQUIRE(s.cardinality() == 18);
  REQUIRE(dwf::density(s) == Rational(1, 2));
}

TEST_CASE("pair file round trip") {
  SECTION("tiny literal") {
    auto s = dwf::load_pairs("pairs 2 1\n0 1\n");
    REQUIRE(s.group_order() == 2);
    REQUIRE(s.cardinality() == 1);
    REQUIRE(s.test(0, 1));
    REQUIRE_FALSE(s.test(1, 0));
  }
  SECTION("save then load is the identity") {
    auto g = FiniteGroup::cyclic_product({32});
    auto s = dwf::generate(g, {Rational(1, 10), 5, PairMode::bernoulli});
    auto back = dwf::load_pairs(dwf::save_pairs(s));
    REQUIRE(back == s);
  }
  SECTION("loader rejects malformed input") {
    REQUIRE_THROWS_AS(dwf::load_pairs("pears 2 1\n0 1\n"),
                      dwf::MalformedHeader);
    REQUIRE_THROWS_AS(dwf::load_pairs("pairs 6 1\n5 9\n"),
                      dwf::PairOutOfRange);
    REQUIRE_THROWS_AS(dwf::load_pairs("pairs 6 2\n1 2\n1 2\n"),
                      dwf::DuplicatePair);
    REQUIRE_THROWS_AS(dwf::load_pairs("pairs 6 2\n1 2\n0 1\n"),
                      dwf::ParseError);
    REQUIRE_THROWS_AS(dwf::load_pairs("pairs 6 3\n1 2\n2 3\n"),
                      dwf::ParseError);
  }
}
