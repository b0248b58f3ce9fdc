#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dwf/errors.hpp"
#include "dwf/group.hpp"

namespace dwf {

namespace detail {

inline ElemId power(const FiniteGroup& g, ElemId base, std::uint64_t e) {
  ElemId acc = g.identity();
  ElemId cur = base;
  while (e) {
    if (e & 1) acc = g.mul(acc, cur);
    e >>= 1;
    if (e) cur = g.mul(cur, cur);
  }
  return acc;
}

inline bool is_prime_power(std::uint32_t m, std::uint32_t* prime = nullptr) {
  if (m < 2) return false;
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = m;  // m itself prime
  std::uint32_t r = m;
  while (r % p == 0) r /= p;
  if (r != 1) return false;
  if (prime) *prime = p;
  return true;
}

}  // namespace detail

// Prime-power cyclic decomposition of an abelian subgroup H, with the
// isomorphism phi realized by a generator list: phi(x_1..x_tau) =
// g_1^{x_1} * ... * g_tau^{x_tau}. Tuples are indexed in the same
// mixed-radix scheme the cyclic_product backend uses.
struct AbelianDecomposition {
  Subgroup subgroup;
  std::vector<std::uint32_t> factors;  // prime powers m_1..m_tau
  std::vector<ElemId> generators;      // generators[i] has order factors[i]
  std::vector<ElemId> phi;             // tuple index -> element of H
  std::vector<std::int64_t> phi_inv;   // element id -> tuple index, -1 outside

  std::uint32_t tau() const {
    return static_cast<std::uint32_t>(factors.size());
  }
  std::uint64_t h_order() const { return subgroup.members.size(); }
  const FiniteGroup& group() const { return *subgroup.parent; }

  std::vector<std::uint32_t> tuple_of_index(std::uint64_t idx) const {
    std::vector<std::uint32_t> digits(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(idx % factors[i]);
      idx /= factors[i];
    }
    return digits;
  }
};

namespace detail {

// Fills phi by walking tuple indices in order with an odometer, so each step
// costs O(1) multiplications amortized.
inline void enumerate_phi(AbelianDecomposition& d, bool validate) {
  const FiniteGroup& g = d.group();
  const std::uint64_t total = d.h_order();
  d.phi.assign(total, g.identity());
  d.phi_inv.assign(g.order(), -1);

  const std::size_t tau = d.factors.size();
  std::vector<std::uint32_t> digit(tau, 0);
  std::vector<ElemId> prefix(tau + 1, g.identity());

  std::vector<char> hit(g.order(), 0);
  for (std::uint64_t idx = 0;; ++idx) {
    ElemId val = prefix[tau];
    if (validate) {
      if (!d.subgroup.contains(val))
        throw Error("decomposition image leaves the subgroup");
      if (hit[val])
        throw Error("generator list does not define a basis (phi collision)");
      hit[val] = 1;
    }
    d.phi[idx] = val;
    d.phi_inv[val] = static_cast<std::int64_t>(idx);
    if (idx + 1 == total) break;

    std::size_t i = tau;
    while (digit[i - 1] + 1 == d.factors[i - 1]) {
      digit[i - 1] = 0;
      --i;
    }
    ++digit[i - 1];
    prefix[i] = g.mul(prefix[i - 1], detail::power(g, d.generators[i - 1],
                                                   digit[i - 1]));
    for (std::size_t j = i; j < tau; ++j) prefix[j + 1] = prefix[j];
  }
}

}  // namespace detail

// Builds a decomposition from an explicit basis and validates it: factor
// product equals |H|, factors are prime powers, generator orders match, and
// phi enumerates H bijectively.
inline AbelianDecomposition make_decomposition(const Subgroup& h,
                                               std::vector<std::uint32_t> factors,
                                               std::vector<ElemId> generators) {
  if (h.parent == nullptr) throw std::invalid_argument("subgroup without parent");
  const FiniteGroup& g = *h.parent;
  if (factors.size() != generators.size())
    throw std::invalid_argument("factor/generator arity mismatch");
  unsigned __int128 prod = 1;
  for (std::uint32_t m : factors) {
    if (!detail::is_prime_power(m))
      throw Error("factor " + std::to_string(m) + " is not a prime power");
    prod *= m;
  }
  if (prod != h.order())
    throw Error("factor product does not match subgroup order");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!h.contains(generators[i]))
      throw Error("generator outside the subgroup");
    if (element_order(g, generators[i]) != factors[i])
      throw Error("generator " + std::to_string(generators[i]) +
                  " does not have order " + std::to_string(factors[i]));
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (g.mul(generators[i], generators[j]) !=
          g.mul(generators[j], generators[i]))
        throw NotAbelian(generators[i], generators[j],
                         "generators do not commute");

  AbelianDecomposition d;
  d.subgroup = h;
  d.factors = std::move(factors);
  d.generators = std::move(generators);
  detail::enumerate_phi(d, /*validate=*/true);
  return d;
}

// Same, but skips the bijectivity validation. Exists for fault-injection
// tests that deliberately corrupt phi.
inline AbelianDecomposition make_decomposition_unchecked(
    const Subgroup& h, std::vector<std::uint32_t> factors,
    std::vector<ElemId> generators) {
  AbelianDecomposition d;
  d.subgroup = h;
  d.factors = std::move(factors);
  d.generators = std::move(generators);
  detail::enumerate_phi(d, /*validate=*/false);
  return d;
}

// Primary (Sylow) decomposition by element orders, then within each p-part a
// greedy basis: pick an element of maximal order in the running quotient,
// correct it by a span element so its true order matches, adjoin. Span
// membership is tracked by enumeration, which is adequate at desk scale.
inline AbelianDecomposition decompose_abelian(const Subgroup& h) {
  if (h.parent == nullptr) throw std::invalid_argument("subgroup without parent");
  const FiniteGroup& g = *h.parent;

  // Cyclic products are componentwise-additive, hence abelian by
  // construction; everything else gets the pairwise check.
  bool known_abelian =
      g.backend() == Backend::cyclic_product && h.order() == g.order();
  if (!known_abelian) {
    ElemId a, b;
    if (find_noncommuting_pair(g, h.members, &a, &b))
      throw NotAbelian(a, b,
                       "subgroup is not abelian: " + std::to_string(a) +
                           " and " + std::to_string(b) + " do not commute");
  }

  if (h.order() == 1)
    return make_decomposition(h, {}, {});

  std::vector<std::uint64_t> ord(h.order());
  for (std::size_t i = 0; i < h.members.size(); ++i)
    ord[i] = element_order(g, h.members[i]);

  std::uint64_t n = h.order();
  std::vector<std::uint32_t> primes;
  {
    std::uint64_t r = n;
    for (std::uint64_t d = 2; d * d <= r; ++d)
      if (r % d == 0) {
        primes.push_back(static_cast<std::uint32_t>(d));
        while (r % d == 0) r /= d;
      }
    if (r > 1) primes.push_back(static_cast<std::uint32_t>(r));
  }

  std::vector<std::uint32_t> factors;
  std::vector<ElemId> basis;
  std::vector<char> in_span(g.order(), 0);

  for (std::uint32_t p : primes) {
    // Sylow p-part: members whose order is a power of p.
    std::vector<ElemId> part;
    std::vector<std::uint64_t> part_ord;
    for (std::size_t i = 0; i < h.members.size(); ++i) {
      std::uint64_t o = ord[i];
      while (o % p == 0) o /= p;
      if (o == 1) {
        part.push_back(h.members[i]);
        part_ord.push_back(ord[i]);
      }
    }

    std::fill(in_span.begin(), in_span.end(), 0);
    std::vector<ElemId> span_list{g.identity()};
    in_span[g.identity()] = 1;

    std::uint64_t cap = *std::max_element(part_ord.begin(), part_ord.end());

    while (span_list.size() < part.size()) {
      // Maximal quotient order, smallest id on ties. The quotient order can
      // never exceed the previous pick, so hitting the cap ends the scan.
      std::uint64_t best_q = 0;
      ElemId best = 0;
      for (std::size_t i = 0; i < part.size(); ++i) {
        ElemId cand = part[i];
        if (in_span[cand]) continue;
        std::uint64_t q = 1;
        ElemId z = cand;
        while (!in_span[z]) {
          z = detail::power(g, z, p);
          q *= p;
        }
        if (q > best_q) {
          best_q = q;
          best = cand;
        }
        if (best_q == cap) break;
      }
      if (best_q == 0) throw Error("p-group basis scan stalled");

      // Correct so the true order equals the quotient order: find s in the
      // span with s^q = best^q, then use best * s^-1.
      ElemId target = detail::power(g, best, best_q);
      ElemId corrected = best;
      if (target != g.identity()) {
        bool found = false;
        for (ElemId s : span_list)
          if (detail::power(g, s, best_q) == target) {
            corrected = g.mul(best, g.inv(s));
            found = true;
            break;
          }
        if (!found) throw Error("p-group basis correction failed");
      }
      if (detail::power(g, corrected, best_q) != g.identity())
        throw Error("corrected generator has wrong order");

      factors.push_back(static_cast<std::uint32_t>(best_q));
      basis.push_back(corrected);

      std::vector<ElemId> grown = span_list;
      ElemId cj = corrected;
      for (std::uint64_t j = 1; j < best_q; ++j) {
        for (ElemId s : span_list) {
          ElemId v = g.mul(s, cj);
          if (!in_span[v]) {
            in_span[v] = 1;
            grown.push_back(v);
          }
        }
        cj = g.mul(cj, corrected);
      }
      span_list = std::move(grown);
      cap = best_q;
    }
  }

  return make_decomposition(h, std::move(factors), std::move(basis));
}

// Case-driven factor reordering. If some factor exceeds k, a largest such
// factor moves to the front. Otherwise the most popular value m (smallest m
// on multiplicity ties) moves to positions 1..lambda. Generators and phi are
// permuted consistently; relative order elsewhere is preserved.
inline AbelianDecomposition reorder_factors(const AbelianDecomposition& d,
                                            std::uint32_t k) {
  if (d.tau() == 0) return d;
  std::vector<std::size_t> perm;
  perm.reserve(d.tau());

  bool has_large = false;
  for (std::uint32_t m : d.factors) has_large |= (m > k);

  if (has_large) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < d.factors.size(); ++i)
      if (d.factors[i] > d.factors[pick]) pick = i;
    perm.push_back(pick);
    for (std::size_t i = 0; i < d.factors.size(); ++i)
      if (i != pick) perm.push_back(i);
  } else {
    std::map<std::uint32_t, std::uint32_t> mult;
    for (std::uint32_t m : d.factors) ++mult[m];
    std::uint32_t lambda = 0, m_best = 0;
    for (auto [value, count] : mult)
      if (count > lambda) {
        lambda = count;
        m_best = value;  // map iterates ascending: smallest m wins ties
      }
    for (std::size_t i = 0; i < d.factors.size(); ++i)
      if (d.factors[i] == m_best) perm.push_back(i);
    for (std::size_t i = 0; i < d.factors.size(); ++i)
      if (d.factors[i] != m_best) perm.push_back(i);
  }

  std::vector<std::uint32_t> factors(d.tau());
  std::vector<ElemId> gens(d.tau());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    factors[i] = d.factors[perm[i]];
    gens[i] = d.generators[perm[i]];
  }
  return make_decomposition(d.subgroup, std::move(factors), std::move(gens));
}

// ---- large abelian subgroup search ----

enum class SubgroupPreference { max_order, max_factor_multiplicity };

namespace detail {

inline std::vector<ElemId> center_members(const FiniteGroup& g) {
  std::vector<ElemId> z;
  for (ElemId a = 0; a < g.order(); ++a) {
    bool central = true;
    for (ElemId b = 0; b < g.order() && central; ++b)
      central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

// All subgroups of a small group, by closing every (subgroup, element) pair.
inline std::vector<std::vector<ElemId>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<ElemId>> seen;
  std::vector<std::vector<ElemId>> work;
  std::vector<ElemId> trivial{g.identity()};
  seen.insert(trivial);
  work.push_back(trivial);
  for (std::size_t qi = 0; qi < work.size(); ++qi) {
    std::vector<ElemId> base = work[qi];
    for (ElemId e = 0; e < g.order(); ++e) {
      if (std::binary_search(base.begin(), base.end(), e)) continue;
      std::vector<ElemId> seeds = base;
      seeds.push_back(e);
      auto closed = subgroup_closure(g, seeds).members;
      if (seen.insert(closed).second) work.push_back(std::move(closed));
    }
  }
  return {seen.begin(), seen.end()};
}

// Greedy abelian growth inside the centralizer chain starting from <a>.
inline std::vector<ElemId> grow_abelian(const FiniteGroup& g, ElemId a) {
  std::vector<char> in(g.order(), 0);
  std::vector<ElemId> members;
  ElemId cur = g.identity();
  do {
    in[cur] = 1;
    members.push_back(cur);
    cur = g.mul(cur, a);
  } while (!in[cur]);

  std::vector<ElemId> cand;
  for (ElemId x = 0; x < g.order(); ++x)
    if (g.mul(x, a) == g.mul(a, x)) cand.push_back(x);

  for (;;) {
    ElemId chosen = g.order();
    for (ElemId x : cand)
      if (!in[x]) {
        chosen = x;
        break;
      }
    if (chosen == g.order()) break;

    std::uint64_t oc = element_order(g, chosen);
    std::vector<ElemId> grown = members;
    ElemId cj = chosen;
    for (std::uint64_t j = 1; j < oc; ++j) {
      for (ElemId s : members)
        if (ElemId v = g.mul(s, cj); !in[v]) {
          in[v] = 1;
          grown.push_back(v);
        }
      cj = g.mul(cj, chosen);
    }
    members = std::move(grown);

    std::vector<ElemId> filtered;
    for (ElemId x : cand)
      if (g.mul(x, chosen) == g.mul(chosen, x)) filtered.push_back(x);
    cand = std::move(filtered);
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace detail

// Constructive stand-in for the existential large-abelian-subgroup theorem.
// Strategy: the center always counts; groups of order <= 24 get exhaustive
// subgroup enumeration; larger groups use greedy centralizer growth from
// every cyclic subgroup. Deterministic: ties break to the lexicographically
// smallest member list. The preference flag can instead favor subgroups
// whose decomposition repeats one factor value most often.
inline Subgroup find_large_abelian_subgroup(
    const FiniteGroup& g,
    SubgroupPreference pref = SubgroupPreference::max_order) {
  bool want_lambda = pref == SubgroupPreference::max_factor_multiplicity;
  if (g.order() == 1) return whole_group(g);
  if (!want_lambda && g.backend() == Backend::cyclic_product)
    return whole_group(g);

  std::vector<std::vector<ElemId>> candidates;

  if (g.order() <= 24) {
    // Exhaustive: the subgroup lattice includes the center and the whole
    // group, so no separate seeding is needed.
    for (auto& s : detail::all_subgroups(g)) {
      ElemId a, b;
      if (!find_noncommuting_pair(g, s, &a, &b)) candidates.push_back(s);
    }
  } else if (g.backend() == Backend::cyclic_product) {
    candidates.push_back(whole_group(g).members);
  } else {
    std::vector<ElemId> center = detail::center_members(g);
    if (center.size() == g.order()) {
      candidates.push_back(std::move(center));
    } else {
      candidates.push_back(center);
      std::set<std::vector<ElemId>> seen_cyclic;
      for (ElemId a = 0; a < g.order(); ++a) {
        std::vector<ElemId> cyc;
        ElemId cur = g.identity();
        do {
          cyc.push_back(cur);
          cur = g.mul(cur, a);
        } while (cur != g.identity());
        std::sort(cyc.begin(), cyc.end());
        if (!seen_cyclic.insert(cyc).second) continue;
        candidates.push_back(detail::grow_abelian(g, a));
      }
    }
  }

  std::size_t best = 0;
  if (pref == SubgroupPreference::max_order) {
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const auto& c = candidates[i];
      const auto& b = candidates[best];
      if (c.size() > b.size() || (c.size() == b.size() && c < b)) best = i;
    }
  } else {
    auto lambda_of = [&](const std::vector<ElemId>& mem) -> std::uint32_t {
      auto d = decompose_abelian(Subgroup{&g, mem});
      std::map<std::uint32_t, std::uint32_t> mult;
      for (std::uint32_t m : d.factors) ++mult[m];
      std::uint32_t lam = 0;
      for (auto [value, count] : mult) lam = std::max(lam, count);
      return lam;
    };
    std::uint32_t best_lam = lambda_of(candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      std::uint32_t lam = lambda_of(candidates[i]);
      const auto& c = candidates[i];
      const auto& b = candidates[best];
      bool better = lam > best_lam ||
                    (lam == best_lam &&
                     (c.size() > b.size() || (c.size() == b.size() && c < b)));
      if (better) {
        best = i;
        best_lam = lam;
      }
    }
  }
  return Subgroup{&g, candidates[best]};
}

// ---- regime report ----

struct RegimeReport {
  std::uint64_t group_order = 0;
  std::uint64_t h_order = 0;
  std::uint32_t k = 0;
  bool paper_regime = false;
  std::uint32_t lambda = 0;
  std::uint32_t rho_max = 0;
  std::string notes;
};

inline RegimeReport regime_report(const AbelianDecomposition& d,
                                  std::uint32_t k) {
  RegimeReport r;
  r.group_order = d.group().order();
  r.h_order = d.h_order();
  r.k = k;

  std::map<std::uint32_t, std::uint32_t> mult;
  for (std::uint32_t m : d.factors) ++mult[m];
  for (auto [value, count] : mult) r.lambda = std::max(r.lambda, count);
  r.rho_max = r.lambda > 0 ? r.lambda - 1 : 0;

  // The size hypothesis |H| >= k^{3k log k}, compared via natural logs with
  // a small relative slack; the flag is informational only.
  double ln_h = std::log(static_cast<double>(r.h_order));
  double required = 0.0;
  if (k >= 2) {
    double lk = std::log(static_cast<double>(k));
    required = 3.0 * k * lk * lk;
    r.paper_regime = ln_h >= required * (1.0 - 1e-9);
  }

  std::ostringstream notes;
  notes << "tau=" << d.tau() << " lambda=" << r.lambda
        << "; size hypothesis needs ln|H| >= " << required << ", have ln|H| = "
        << ln_h
        << "; the abelian-subgroup constant mu and the threshold N(k) are "
           "existential and carry no computable value at this scale";
  r.notes = notes.str();
  return r;
}

inline RegimeReport regime_report(const FiniteGroup& g, const Subgroup& h,
                                  std::uint32_t k) {
  (void)g;
  return regime_report(decompose_abelian(h), k);
}

}  // namespace dwf
