#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dwf/errors.hpp"
#include "dwf/group.hpp"
#include "dwf/pairset.hpp"
#include "dwf/window.hpp"

// Brute-force oracles. Everything here re-derives the window sets straight
// from their displayed definitions, sharing nothing with the construction
// code beyond group multiplication, so a transcription error on either side
// shows up as a disagreement.

namespace dwf {

struct SpanReport {
  std::vector<ElemId> element_set;
  std::vector<Triple> spanned_triples;
  std::uint64_t count = 0;
};

struct OracleCaps {
  std::uint32_t lemma_cap = 512;
  std::uint32_t quadratic_cap = 256;  // for the |H|^2 multiplicity scan
};

namespace oracle_detail {

// { ell * x * g_1^{s_1} ... g_rho^{s_rho} g_{rho+1}^s } \ { ell*x },
// exponents enumerated with plain counters and powers taken by repeated
// multiplication.
inline std::vector<ElemId> left_window(const FiniteGroup& g,
                                       const AbelianDecomposition& d,
                                       const WindowParams& p, ElemId x) {
  std::vector<ElemId> elems;
  std::vector<std::uint32_t> exps(p.rho + 1, 0);
  for (;;) {
    ElemId val = g.mul(p.ell, x);
    for (std::uint32_t i = 0; i <= p.rho; ++i)
      for (std::uint32_t j = 0; j < exps[i]; ++j)
        val = g.mul(val, d.generators[i]);
    elems.push_back(val);

    std::size_t i = exps.size();
    while (i > 0) {
      std::uint32_t limit = (i == exps.size()) ? p.t : p.m;
      if (exps[i - 1] + 1 < limit) {
        ++exps[i - 1];
        break;
      }
      exps[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  ElemId base = g.mul(p.ell, x);
  auto it = std::lower_bound(elems.begin(), elems.end(), base);
  if (it != elems.end() && *it == base) elems.erase(it);
  return elems;
}

// Mirror: { x * g_1^{s_1} ... g_{rho+1}^s * r } \ { x*r }.
inline std::vector<ElemId> right_window(const FiniteGroup& g,
                                        const AbelianDecomposition& d,
                                        const WindowParams& p, ElemId y) {
  std::vector<ElemId> elems;
  std::vector<std::uint32_t> exps(p.rho + 1, 0);
  for (;;) {
    ElemId val = y;
    for (std::uint32_t i = 0; i <= p.rho; ++i)
      for (std::uint32_t j = 0; j < exps[i]; ++j)
        val = g.mul(val, d.generators[i]);
    val = g.mul(val, p.r);
    elems.push_back(val);

    std::size_t i = exps.size();
    while (i > 0) {
      std::uint32_t limit = (i == exps.size()) ? p.t : p.m;
      if (exps[i - 1] + 1 < limit) {
        ++exps[i - 1];
        break;
      }
      exps[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  ElemId base = g.mul(y, p.r);
  auto it = std::lower_bound(elems.begin(), elems.end(), base);
  if (it != elems.end() && *it == base) elems.erase(it);
  return elems;
}

}  // namespace oracle_detail

// ---- witness recount ----

// Validates every listed triple (membership in S, correct product, spanned
// by E) and recounts, by a direct double loop over E x E, how many pairs of
// S the spanning set actually spans. The recount can only exceed the window
// count. Witnesses parsed from report files carry no a1/a2 sets; those
// checks are skipped for them.
inline SpanReport recount_witness(const PairSet& s, const FiniteGroup& g,
                                  const Witness& w) {
  const std::uint32_t n = g.order();
  if (s.group_order() != n)
    throw std::invalid_argument("pair set order does not match group");
  const auto& e = w.spanning_set;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= n) throw WitnessInconsistent("spanning id out of range");
    if (i > 0 && e[i - 1] >= e[i])
      throw WitnessInconsistent("spanning ids not strictly increasing");
  }
  if (w.triple_count != w.triples.size())
    throw WitnessInconsistent("count field disagrees with the triple list");
  if (w.params.window_size > 0 && e.size() > 4 * w.params.window_size)
    throw WitnessInconsistent("spanning set larger than 4w");
  bool has_windows = !w.a1.empty() || !w.a2.empty();
  if (has_windows && (w.a1.size() != w.params.window_size ||
                      w.a2.size() != w.params.window_size))
    throw WitnessInconsistent("window set sizes disagree with w");

  auto in_set = [](const std::vector<ElemId>& v, ElemId x) {
    return std::binary_search(v.begin(), v.end(), x);
  };
  for (std::size_t i = 0; i < w.triples.size(); ++i) {
    const Triple& t = w.triples[i];
    if (t.a >= n || t.b >= n || t.ab >= n)
      throw WitnessInconsistent("triple id out of range");
    if (!s.test(t.a, t.b))
      throw WitnessInconsistent("listed pair (" + std::to_string(t.a) + "," +
                                std::to_string(t.b) + ") is not in S");
    if (g.mul(t.a, t.b) != t.ab)
      throw WitnessInconsistent("listed product is not a*b");
    if (!in_set(e, t.a) || !in_set(e, t.b) || !in_set(e, t.ab))
      throw WitnessInconsistent("listed triple is not spanned by E");
    if (has_windows && (!in_set(w.a1, t.a) || !in_set(w.a2, t.b)))
      throw WitnessInconsistent("listed triple leaves the chosen window");
    if (i > 0) {
      const Triple& prev = w.triples[i - 1];
      if (prev.a > t.a || (prev.a == t.a && prev.b >= t.b))
        throw WitnessInconsistent("triples not strictly increasing by (a,b)");
    }
  }

  SpanReport rep;
  rep.element_set = e;
  for (ElemId u : e)
    for (ElemId v : e)
      if (s.test(u, v)) {
        ElemId uv = g.mul(u, v);
        if (in_set(e, uv)) rep.spanned_triples.push_back({u, v, uv});
      }
  rep.count = rep.spanned_triples.size();
  if (rep.count < w.triple_count)
    throw WitnessInconsistent(
        "spanning set spans fewer triples than the window lists");
  return rep;
}

// ---- lemma suite ----

struct LemmaEntry {
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

struct LemmaReport {
  std::vector<LemmaEntry> lemmas;
  bool all_pass() const {
    for (const auto& e : lemmas)
      if (!e.skipped && !e.pass) return false;
    return true;
  }
};

// Exhaustively checks the four window conditions as stated: exact set
// sizes, the 2w product bound, injectivity of the base-point map, and the
// w^2 multiplicity of every (a, b). Returns the first counterexample per
// failing condition.
inline LemmaReport lemma_suite(const FiniteGroup& g,
                               const AbelianDecomposition& d,
                               const WindowParams& p,
                               const OracleCaps& caps = {}) {
  const std::uint32_t hsz = static_cast<std::uint32_t>(d.h_order());
  if (hsz > caps.lemma_cap)
    throw CapExceeded("|H| = " + std::to_string(hsz) + " exceeds lemma cap " +
                      std::to_string(caps.lemma_cap));
  const std::uint64_t w = p.window_size;
  const auto& members = d.subgroup.members;

  std::vector<std::vector<ElemId>> a1(hsz), a2(hsz);
  for (std::uint32_t i = 0; i < hsz; ++i) {
    a1[i] = oracle_detail::left_window(g, d, p, members[i]);
    a2[i] = oracle_detail::right_window(g, d, p, members[i]);
  }

  LemmaReport rep;

  {
    LemmaEntry e{"condition1 (|A1| = |A2| = t*m^rho - 1)"};
    for (std::uint32_t i = 0; i < hsz && e.pass; ++i)
      if (a1[i].size() != w || a2[i].size() != w) {
        e.pass = false;
        e.detail = "x = " + std::to_string(members[i]) + ": |A1| = " +
                   std::to_string(a1[i].size()) + ", |A2| = " +
                   std::to_string(a2[i].size()) + ", expected " +
                   std::to_string(w);
      }
    rep.lemmas.push_back(std::move(e));
  }

  {
    LemmaEntry e{"condition2 (|A1*A2| <= 2(t*m^rho - 1))"};
    std::vector<char> mark(g.order(), 0);
    std::vector<ElemId> touched;
    for (std::uint32_t i = 0; i < hsz && e.pass; ++i)
      for (std::uint32_t j = 0; j < hsz && e.pass; ++j) {
        touched.clear();
        for (ElemId u : a1[i])
          for (ElemId v : a2[j]) {
            ElemId uv = g.mul(u, v);
            if (!mark[uv]) {
              mark[uv] = 1;
              touched.push_back(uv);
            }
          }
        if (touched.size() > 2 * w) {
          e.pass = false;
          e.detail = "x = " + std::to_string(members[i]) + ", y = " +
                     std::to_string(members[j]) + ": |A1*A2| = " +
                     std::to_string(touched.size()) + " > " +
                     std::to_string(2 * w);
        }
        for (ElemId t : touched) mark[t] = 0;
      }
    rep.lemmas.push_back(std::move(e));
  }

  {
    LemmaEntry e{"condition3 (x != y implies A1_x != A1_y and A2_x != A2_y)"};
    std::map<std::vector<ElemId>, std::uint32_t> seen1, seen2;
    for (std::uint32_t i = 0; i < hsz && e.pass; ++i) {
      auto [it1, new1] = seen1.emplace(a1[i], i);
      if (!new1) {
        e.pass = false;
        e.detail = "A1 collides for x = " + std::to_string(members[it1->second]) +
                   " and x = " + std::to_string(members[i]);
        break;
      }
      auto [it2, new2] = seen2.emplace(a2[i], i);
      if (!new2) {
        e.pass = false;
        e.detail = "A2 collides for y = " + std::to_string(members[it2->second]) +
                   " and y = " + std::to_string(members[i]);
      }
    }
    rep.lemmas.push_back(std::move(e));
  }

  {
    LemmaEntry e{"condition4 (every (a,b) lies in exactly (t*m^rho - 1)^2 windows)"};
    if (hsz > caps.quadratic_cap) {
      e.skipped = true;
      e.detail = "|H| exceeds quadratic cap " +
                 std::to_string(caps.quadratic_cap);
    } else {
      std::vector<std::uint64_t> cnt1(g.order(), 0), cnt2(g.order(), 0);
      for (std::uint32_t i = 0; i < hsz; ++i) {
        for (ElemId u : a1[i]) ++cnt1[u];
        for (ElemId v : a2[i]) ++cnt2[v];
      }
      for (std::uint32_t ai = 0; ai < hsz && e.pass; ++ai)
        for (std::uint32_t bi = 0; bi < hsz && e.pass; ++bi) {
          std::uint64_t multiplicity = cnt1[g.mul(p.ell, members[ai])] *
                                       cnt2[g.mul(members[bi], p.r)];
          if (multiplicity != w * w) {
            e.pass = false;
            e.detail = "(a,b) = (" + std::to_string(members[ai]) + "," +
                       std::to_string(members[bi]) + ") lies in " +
                       std::to_string(multiplicity) + " windows, expected " +
                       std::to_string(w * w);
          }
        }
    }
    rep.lemmas.push_back(std::move(e));
  }

  return rep;
}

// Histogram of how many windows contain each (a, b) in H^2; a correct
// construction puts all mass on (t*m^rho - 1)^2.
inline std::map<std::uint64_t, std::uint64_t> window_multiplicity_histogram(
    const FiniteGroup& g, const AbelianDecomposition& d,
    const WindowParams& p, const OracleCaps& caps = {}) {
  const std::uint32_t hsz = static_cast<std::uint32_t>(d.h_order());
  if (hsz > caps.quadratic_cap)
    throw CapExceeded("|H| = " + std::to_string(hsz) +
                      " exceeds quadratic cap " +
                      std::to_string(caps.quadratic_cap));
  const auto& members = d.subgroup.members;
  std::vector<std::uint64_t> cnt1(g.order(), 0), cnt2(g.order(), 0);
  for (std::uint32_t i = 0; i < hsz; ++i) {
    for (ElemId u : oracle_detail::left_window(g, d, p, members[i])) ++cnt1[u];
    for (ElemId v : oracle_detail::right_window(g, d, p, members[i]))
      ++cnt2[v];
  }
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint32_t ai = 0; ai < hsz; ++ai)
    for (std::uint32_t bi = 0; bi < hsz; ++bi)
      ++hist[cnt1[g.mul(p.ell, members[ai])] *
             cnt2[g.mul(members[bi], p.r)]];
  return hist;
}

// ---- exact optimum over k-subsets ----

namespace oracle_detail {

inline std::uint64_t binomial_capped(std::uint32_t n, std::uint32_t k,
                                     std::uint64_t cap) {
  if (k > n) return 0;
  unsigned __int128 c = 1;
  for (std::uint32_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace oracle_detail

// Exact maximum number of spanned triples over all k-element subsets, by
// depth-first search in lexicographic order with branch-and-bound pruning.
// A partial subset is bounded by its closed pairs, its still-closable open
// pairs, and one point for every pair touching a future slot.
inline SpanReport best_k_subset(const PairSet& s, const FiniteGroup& g,
                                std::uint32_t k) {
  const std::uint32_t n = g.order();
  if (k == 0 || k > n)
    throw std::invalid_argument("subset size must lie in [1, |G|]");
  if (oracle_detail::binomial_capped(n, k, 1000000) > 1000000)
    throw SearchSpaceTooLarge("C(" + std::to_string(n) + "," +
                              std::to_string(k) + ") exceeds 10^6");

  std::vector<ElemId> cur;
  std::vector<ElemId> best_set;
  std::uint64_t best_count = 0;
  bool have_best = false;

  auto score_parts = [&](std::uint64_t* closed, std::uint64_t* alive) {
    *closed = 0;
    *alive = 0;
    for (ElemId u : cur)
      for (ElemId v : cur) {
        if (!s.test(u, v)) continue;
        ElemId uv = g.mul(u, v);
        if (std::binary_search(cur.begin(), cur.end(), uv))
          ++*closed;
        else if (uv > cur.back())
          ++*alive;
      }
  };

  // cur stays sorted because candidates are explored in ascending id order.
  auto dfs = [&](auto&& self, ElemId next) -> void {
    if (cur.size() == k) {
      std::uint64_t closed = 0, alive = 0;
      score_parts(&closed, &alive);
      if (!have_best || closed > best_count) {
        have_best = true;
        best_count = closed;
        best_set = cur;
      }
      return;
    }
    if (!cur.empty() && have_best) {
      std::uint64_t closed = 0, alive = 0;
      score_parts(&closed, &alive);
      std::uint64_t sz = cur.size();
      std::uint64_t bound = closed + alive +
                            (static_cast<std::uint64_t>(k) * k - sz * sz);
      if (bound <= best_count) return;
    }
    std::uint32_t slots = k - static_cast<std::uint32_t>(cur.size());
    for (ElemId e = next; e + slots <= n; ++e) {
      cur.push_back(e);
      self(self, e + 1);
      cur.pop_back();
    }
  };
  dfs(dfs, 0);

  SpanReport rep;
  rep.element_set = best_set;
  for (ElemId u : best_set)
    for (ElemId v : best_set)
      if (s.test(u, v)) {
        ElemId uv = g.mul(u, v);
        if (std::binary_search(best_set.begin(), best_set.end(), uv))
          rep.spanned_triples.push_back({u, v, uv});
      }
  rep.count = rep.spanned_triples.size();
  return rep;
}

}  // namespace dwf
