#include <map>
#include <vector>

#include "catch_amalgamated.hpp"
#include "dwf/abelian.hpp"
#include "test_support.hpp"

using dwf::ElemId;
using dwf::FiniteGroup;
using dwf::Subgroup;

namespace {

// Test-side oracle: the largest abelian subgroup order, found by closing
// every pairwise-commuting generator subset of size <= max_gens. max_gens
// must cover the rank of the group's abelian subgroups.
std::uint32_t oracle_max_abelian_order(const FiniteGroup& g,
                                       std::size_t max_gens) {
  std::uint32_t best = 1;
  std::vector<ElemId> subset;
  auto rec = [&](auto&& self, ElemId start) -> void {
    if (!subset.empty()) {
      auto h = dwf::subgroup_closure(g, subset);
      ElemId a, b;
      if (!dwf::find_noncommuting_pair(g, h.members, &a, &b))
        best = std::max(best, h.order());
    }
    if (subset.size() == max_gens) return;
    for (ElemId e = start; e < g.order(); ++e) {
      bool commutes = true;
      for (ElemId s : subset)
        if (g.mul(s, e) != g.mul(e, s)) {
          commutes = false;
          break;
        }
      if (!commutes) continue;
      subset.push_back(e);
      self(self, e + 1);
      subset.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

FiniteGroup d8_times_z8() {
  // dihedral group on points 0..3 times an 8-cycle on points 4..11
  std::vector<std::uint32_t> rot = test_support::perm_cycle(12, 0, 3);
  std::vector<std::uint32_t> ref(12);
  for (std::uint32_t i = 0; i < 12; ++i) ref[i] = i;
  ref[1] = 3;
  ref[3] = 1;
  std::vector<std::uint32_t> c8 = test_support::perm_cycle(12, 4, 11);
  return FiniteGroup::permutation_closure(12, {rot, ref, c8});
}

// Z_4 x Z_2 with ids assigned so the greedy basis scan meets an element
// whose true order exceeds its quotient order, forcing the correction step.
FiniteGroup relabeled_z4xz2() {
  const std::vector<std::pair<int, int>> elems = {
      {0, 0}, {1, 1}, {1, 0}, {0, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}};
  auto index_of = [&](int x, int y) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == std::make_pair(x, y)) return static_cast<int>(i);
    return -1;
  };
  std::ostringstream out;
  out << 8 << "\n";
  for (auto [x1, y1] : elems) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (j) out << ' ';
      out << index_of((x1 + elems[j].first) % 4, (y1 + elems[j].second) % 2);
    }
    out << "\n";
  }
  return dwf::load_cayley_table(out.str());
}

}  // namespace

TEST_CASE("large abelian subgroup search") {
  SECTION("abelian groups return themselves") {
    auto g = FiniteGroup::cyclic_product({12});
    auto h = dwf::find_large_abelian_subgroup(g);
    REQUIRE(h.order() == 12);
  }
  SECTION("S_3 yields the rotation subgroup") {
    auto s3 = dwf::load_cayley_table(test_support::metacyclic_table(3, 0, 2));
    auto h = dwf::find_large_abelian_subgroup(s3);
    REQUIRE(h.members == std::vector<ElemId>{0, 1, 2});
  }
  SECTION("the order-8 dihedral group yields order 4") {
    auto d4 = dwf::load_cayley_table(test_support::metacyclic_table(4, 0, 3));
    auto h = dwf::find_large_abelian_subgroup(d4);
    REQUIRE(h.order() == 4);
  }
  SECTION("search equals the exhaustive oracle on small groups") {
    struct Case {
      FiniteGroup g;
      std::size_t max_gens;
    };
    std::vector<Case> cases;
    cases.push_back({dwf::load_cayley_table(test_support::metacyclic_table(3, 0, 2)), 2});  // S_3
    cases.push_back({dwf::load_cayley_table(test_support::metacyclic_table(4, 0, 3)), 2});  // D_4
    cases.push_back({dwf::load_cayley_table(test_support::metacyclic_table(4, 2, 3)), 2});  // Q_8
    cases.push_back({dwf::load_cayley_table(test_support::metacyclic_table(5, 0, 4)), 2});  // D_5
    cases.push_back({dwf::load_cayley_table(test_support::metacyclic_table(6, 0, 5)), 2});  // D_6
    cases.push_back({dwf::load_cayley_table(test_support::metacyclic_table(6, 3, 5)), 2});  // Dic_3
    cases.push_back({FiniteGroup::permutation_closure(
                         4, {{1, 2, 0, 3}, {1, 0, 3, 2}}), 3});  // A_4
    cases.push_back({FiniteGroup::permutation_closure(
                         4, {test_support::perm_cycle(4, 0, 3), {1, 0, 2, 3}}),
                     3});  // S_4
    cases.push_back({dwf::load_cayley_table(dwf::save_cayley_table(
                         FiniteGroup::cyclic_product({2, 2, 2, 2}))),
                     4});  // Z_2^4 through the table backend

    for (auto& c : cases) {
      auto h = dwf::find_large_abelian_subgroup(c.g);
      ElemId a, b;
      REQUIRE_FALSE(dwf::find_noncommuting_pair(c.g, h.members, &a, &b));
      REQUIRE(h.order() == oracle_max_abelian_order(c.g, c.max_gens));
    }
  }
  SECTION("greedy path on an order-64 product finds the order-32 subgroup") {
    auto g = d8_times_z8();
    REQUIRE(g.order() == 64);
    auto h = dwf::find_large_abelian_subgroup(g);
    REQUIRE(h.order() == 32);
    ElemId a, b;
    REQUIRE_FALSE(dwf::find_noncommuting_pair(g, h.members, &a, &b));
    REQUIRE(h.order() == oracle_max_abelian_order(g, 3));
  }
  SECTION("search is deterministic") {
    auto s4 = FiniteGroup::permutation_closure(
        4, {test_support::perm_cycle(4, 0, 3), {1, 0, 2, 3}});
    auto h1 = dwf::find_large_abelian_subgroup(s4);
    auto h2 = dwf::find_large_abelian_subgroup(s4);
    REQUIRE(h1.members == h2.members);
  }
  SECTION("the factor-multiplicity preference trades order for lambda") {
    auto g = dwf::load_cayley_table(
        dwf::save_cayley_table(FiniteGroup::cyclic_product({4, 2})));
    auto by_order = dwf::find_large_abelian_subgroup(g);
    REQUIRE(by_order.order() == 8);
    auto by_lambda = dwf::find_large_abelian_subgroup(
        g, dwf::SubgroupPreference::max_factor_multiplicity);
    REQUIRE(by_lambda.order() == 4);
    auto d = dwf::decompose_abelian(by_lambda);
    REQUIRE(d.factors == std::vector<std::uint32_t>{2, 2});
  }
}

TEST_CASE("abelian decomposition") {
  SECTION("Z_6 splits into 2 and 3") {
    auto g = FiniteGroup::cyclic_product({6});
    auto d = dwf::decompose_abelian(dwf::whole_group(g));
    REQUIRE(d.factors == std::vector<std::uint32_t>{2, 3});
  }
  SECTION("Z_2^3 stays elementary") {
    auto g = FiniteGroup::cyclic_product({2, 2, 2});
    auto d = dwf::decompose_abelian(dwf::whole_group(g));
    REQUIRE(d.factors == std::vector<std::uint32_t>{2, 2, 2});
  }
  SECTION("Z_12 splits into 4 and 3") {
    auto g = FiniteGroup::cyclic_product({12});
    auto d = dwf::decompose_abelian(dwf::whole_group(g));
    REQUIRE(d.factors == std::vector<std::uint32_t>{4, 3});
    REQUIRE(dwf::element_order(g, d.generators[0]) == 4);
    REQUIRE(dwf::element_order(g, d.generators[1]) == 3);
  }
  SECTION("basis correction on a relabeled table") {
    auto g = relabeled_z4xz2();
    auto d = dwf::decompose_abelian(dwf::whole_group(g));
    REQUIRE(d.factors == std::vector<std::uint32_t>{4, 2});
    // exhaustive homomorphism check
    for (std::uint64_t u = 0; u < d.h_order(); ++u)
      for (std::uint64_t v = 0; v < d.h_order(); ++v) {
        auto tu = d.tuple_of_index(u), tv = d.tuple_of_index(v);
        std::vector<std::uint32_t> sum(tu.size());
        for (std::size_t i = 0; i < tu.size(); ++i)
          sum[i] = (tu[i] + tv[i]) % d.factors[i];
        std::uint64_t si = 0;
        for (std::size_t i = 0; i < sum.size(); ++i)
          si = si * d.factors[i] + sum[i];
        REQUIRE(g.mul(d.phi[u], d.phi[v]) == d.phi[si]);
      }
  }
  SECTION("not-abelian inputs are rejected with a witness pair") {
    auto s3 = dwf::load_cayley_table(test_support::metacyclic_table(3, 0, 2));
    REQUIRE_THROWS_AS(dwf::decompose_abelian(dwf::whole_group(s3)),
                      dwf::NotAbelian);
  }
  SECTION("trivial subgroup decomposes to tau = 0") {
    auto g = FiniteGroup::cyclic_product({5});
    Subgroup triv{&g, {0}};
    auto d = dwf::decompose_abelian(triv);
    REQUIRE(d.tau() == 0);
    REQUIRE(d.h_order() == 1);
  }
  SECTION("phi is a bijective homomorphism on assorted groups") {
    for (auto moduli : std::vector<std::vector<std::uint32_t>>{
             {2, 2, 2, 2, 2}, {8, 9}, {16, 4}, {3, 3, 3, 3}, {1024}}) {
      auto g = FiniteGroup::cyclic_product(moduli);
      auto d = dwf::decompose_abelian(dwf::whole_group(g));
      std::uint64_t n = d.h_order();
      // bijectivity: phi hits every member exactly once
      std::vector<char> hit(g.order(), 0);
      for (std::uint64_t i = 0; i < n; ++i) {
        REQUIRE_FALSE(hit[d.phi[i]]);
        hit[d.phi[i]] = 1;
      }
      // homomorphism on sampled pairs for the big ones, exhaustive otherwise
      dwf::SplitMix64 rng(5);
      std::uint64_t checks = n <= 128 ? n * n : 4096;
      for (std::uint64_t it = 0; it < checks; ++it) {
        std::uint64_t u = n <= 128 ? it / n : rng.below(n);
        std::uint64_t v = n <= 128 ? it % n : rng.below(n);
        auto tu = d.tuple_of_index(u), tv = d.tuple_of_index(v);
        std::uint64_t si = 0;
        for (std::size_t i = 0; i < tu.size(); ++i)
          si = si * d.factors[i] + (tu[i] + tv[i]) % d.factors[i];
        REQUIRE(g.mul(d.phi[u], d.phi[v]) == d.phi[si]);
      }
    }
  }
  SECTION("explicit bases are validated") {
    auto g = FiniteGroup::cyclic_product({4, 3});
    auto h = dwf::whole_group(g);
    ElemId g40 = g.encode(std::vector<std::uint32_t>{1, 0});
    ElemId g03 = g.encode(std::vector<std::uint32_t>{0, 1});
    auto d = dwf::make_decomposition(h, {4, 3}, {g40, g03});
    REQUIRE(d.phi[0] == g.identity());
    // 12 is not a prime power
    REQUIRE_THROWS_AS(dwf::make_decomposition(h, {12}, {g.encode(
                          std::vector<std::uint32_t>{1, 1})}),
                      dwf::Error);
    // wrong generator order
    REQUIRE_THROWS_AS(dwf::make_decomposition(h, {4, 3}, {g40, g40}),
                      dwf::Error);
  }
}

TEST_CASE("factor reordering") {
  SECTION("a factor above k moves to the front") {
    auto g = FiniteGroup::cyclic_product({3, 2});
    auto d = dwf::make_decomposition(
        dwf::whole_group(g), {3, 2},
        {g.encode(std::vector<std::uint32_t>{1, 0}),
         g.encode(std::vector<std::uint32_t>{0, 1})});
    auto r = dwf::reorder_factors(d, 2);
    REQUIRE(r.factors == std::vector<std::uint32_t>{3, 2});
  }
  SECTION("the popular factor moves to the front, stably") {
    auto g = FiniteGroup::cyclic_product({2, 3, 2});
    ElemId a = g.encode(std::vector<std::uint32_t>{1, 0, 0});
    ElemId b = g.encode(std::vector<std::uint32_t>{0, 1, 0});
    ElemId c = g.encode(std::vector<std::uint32_t>{0, 0, 1});
    auto d = dwf::make_decomposition(dwf::whole_group(g), {2, 3, 2}, {a, b, c});
    auto r = dwf::reorder_factors(d, 5);
    REQUIRE(r.factors == std::vector<std::uint32_t>{2, 2, 3});
    REQUIRE(r.generators == std::vector<ElemId>{a, c, b});
  }
  SECTION("multiplicity ties break to the smaller factor value") {
    auto g = FiniteGroup::cyclic_product({4, 3});
    auto d = dwf::decompose_abelian(dwf::whole_group(g));
    REQUIRE(d.factors == std::vector<std::uint32_t>{4, 3});
    auto r = dwf::reorder_factors(d, 12);
    REQUIRE(r.factors == std::vector<std::uint32_t>{3, 4});
  }
  SECTION("reordering preserves the multiset and the isomorphism") {
    auto g = FiniteGroup::cyclic_product({2, 9, 2, 5});
    auto d = dwf::decompose_abelian(dwf::whole_group(g));
    auto r = dwf::reorder_factors(d, 9);
    auto sorted_before = d.factors;
    auto sorted_after = r.factors;
    std::sort(sorted_before.begin(), sorted_before.end());
    std::sort(sorted_after.begin(), sorted_after.end());
    REQUIRE(sorted_before == sorted_after);
    dwf::SplitMix64 rng(11);
    for (int it = 0; it < 2000; ++it) {
      std::uint64_t u = rng.below(r.h_order()), v = rng.below(r.h_order());
      auto tu = r.tuple_of_index(u), tv = r.tuple_of_index(v);
      std::uint64_t si = 0;
      for (std::size_t i = 0; i < tu.size(); ++i)
        si = si * r.factors[i] + (tu[i] + tv[i]) % r.factors[i];
      REQUIRE(g.mul(r.phi[u], r.phi[v]) == r.phi[si]);
    }
  }
}

TEST_CASE("regime reports") {
  SECTION("desk-scale instances are outside the paper regime") {
    auto g = FiniteGroup::cyclic_product({12});
    auto rep = dwf::regime_report(g, dwf::whole_group(g), 4);
    REQUIRE_FALSE(rep.paper_regime);
    REQUIRE(rep.h_order == 12);
  }
  SECTION("lambda counts the most popular factor") {
    auto g = FiniteGroup::cyclic_product({12});
    auto rep = dwf::regime_report(g, dwf::whole_group(g), 6);
    REQUIRE(rep.lambda == 1);  // factors {4, 3}
    REQUIRE(rep.rho_max == 0);
  }
  SECTION("an order-2^20 elementary product reports lambda = tau = 20") {
    std::vector<std::uint32_t> twenty_twos(20, 2);
    auto g = FiniteGroup::cyclic_product(twenty_twos);
    REQUIRE(g.order() == 1u << 20);
    auto rep = dwf::regime_report(g, dwf::whole_group(g), 2);
    REQUIRE(rep.lambda == 20);
    auto d = dwf::decompose_abelian(dwf::whole_group(g));
    REQUIRE(d.tau() == 20);
    REQUIRE_FALSE(dwf::regime_report(d, 4).paper_regime);
  }
}
