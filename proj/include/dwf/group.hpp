#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dwf/errors.hpp"
#include "dwf/splitmix64.hpp"

namespace dwf {

// Dense element handle: every integer in [0, |G|) names exactly one element.
using ElemId = std::uint32_t;

enum class Backend { cayley_table, cyclic_product, permutation_closure };

inline constexpr std::uint32_t kDefaultClosureCap = 20160;
inline constexpr std::uint64_t kMaxGroupOrder = 1ULL << 30;

// Groups at or below this order get a materialized multiplication table so
// the counting kernels run on plain array lookups.
inline constexpr std::uint32_t kDenseTableLimit = 2048;

namespace detail {

// Mixed-radix id scheme: id(x_1..x_tau) = sum_i x_i * prod_{j>i} m_j.
struct MixedRadix {
  std::vector<std::uint32_t> radii;
  std::vector<std::uint64_t> place;
  std::uint64_t total = 1;

  void init(std::vector<std::uint32_t> r) {
    radii = std::move(r);
    total = 1;
    for (std::uint32_t m : radii) {
      if (m == 0) throw OverflowOrder("cyclic factor must be >= 1");
      if ((unsigned __int128)total * m > kMaxGroupOrder)
        throw OverflowOrder("cyclic product order exceeds supported range");
      total *= m;
    }
    place.assign(radii.size(), 1);
    for (std::size_t i = radii.size(); i-- > 1;)
      place[i - 1] = place[i] * radii[i];
  }

  std::uint32_t digit(std::uint64_t id, std::size_t i) const {
    return static_cast<std::uint32_t>((id / place[i]) % radii[i]);
  }

  std::uint64_t encode(std::span<const std::uint32_t> digits) const {
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < radii.size(); ++i)
      id += static_cast<std::uint64_t>(digits[i]) * place[i];
    return id;
  }
};

struct PermHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint32_t x : v) h = (h ^ x) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

// Uniform finite-group abstraction over three concrete backends. Immutable
// after construction; every operation is read-only and safe to call from
// multiple threads concurrently.
class FiniteGroup {
 public:
  static FiniteGroup cyclic_product(const std::vector<std::uint32_t>& moduli) {
    FiniteGroup g;
    g.backend_ = Backend::cyclic_product;
    g.radix_.init(moduli);
    g.n_ = static_cast<std::uint32_t>(g.radix_.total);
    g.identity_ = 0;
    g.maybe_build_dense();
    return g;
  }

  static FiniteGroup permutation_closure(
      std::uint32_t degree, std::vector<std::vector<std::uint32_t>> generators,
      std::uint32_t closure_cap = kDefaultClosureCap) {
    for (const auto& p : generators) {
      if (p.size() != degree)
        throw std::invalid_argument("generator degree mismatch");
      std::vector<char> seen(degree, 0);
      for (std::uint32_t img : p) {
        if (img >= degree || seen[img])
          throw std::invalid_argument("generator is not a bijection");
        seen[img] = 1;
      }
    }
    FiniteGroup g;
    g.backend_ = Backend::permutation_closure;
    g.degree_ = degree;
    g.identity_ = 0;

    std::vector<std::uint32_t> id_perm(degree);
    for (std::uint32_t i = 0; i < degree; ++i) id_perm[i] = i;
    g.perms_.push_back(id_perm);
    g.perm_index_.emplace(id_perm, 0);

    // BFS in discovery order: pop elements FIFO, right-multiply by the
    // generators in list order. Ids are therefore reproducible across runs.
    for (std::size_t qi = 0; qi < g.perms_.size(); ++qi) {
      for (const auto& gen : generators) {
        std::vector<std::uint32_t> prod(degree);
        for (std::uint32_t p = 0; p < degree; ++p)
          prod[p] = g.perms_[qi][gen[p]];
        if (g.perm_index_.find(prod) == g.perm_index_.end()) {
          if (g.perms_.size() >= closure_cap)
            throw ClosureCapExceeded("permutation closure exceeds cap " +
                                     std::to_string(closure_cap));
          ElemId id = static_cast<ElemId>(g.perms_.size());
          g.perm_index_.emplace(prod, id);
          g.perms_.push_back(std::move(prod));
        }
      }
    }
    g.n_ = static_cast<std::uint32_t>(g.perms_.size());
    g.inverse_.resize(g.n_);
    for (ElemId a = 0; a < g.n_; ++a) {
      std::vector<std::uint32_t> inv(degree);
      for (std::uint32_t p = 0; p < degree; ++p) inv[g.perms_[a][p]] = p;
      g.inverse_[a] = g.perm_index_.at(inv);
    }
    g.maybe_build_dense();
    return g;
  }

  // Table constructor used by the Cayley loader; validates the group axioms.
  static FiniteGroup from_table(std::uint32_t n,
                                std::vector<std::uint16_t> table);

  Backend backend() const { return backend_; }
  std::uint32_t order() const { return n_; }
  ElemId identity() const { return identity_; }

  ElemId mul(ElemId a, ElemId b) const {
    check_id(a);
    check_id(b);
    if (!dense_.empty())
      return dense_[static_cast<std::size_t>(a) * n_ + b];
    return mul_backend(a, b);
  }

  ElemId inv(ElemId a) const {
    check_id(a);
    if (backend_ == Backend::cyclic_product) {
      std::uint64_t id = 0;
      for (std::size_t i = 0; i < radix_.radii.size(); ++i) {
        std::uint32_t m = radix_.radii[i];
        std::uint32_t x = radix_.digit(a, i);
        id += static_cast<std::uint64_t>((m - x) % m) * radix_.place[i];
      }
      return static_cast<ElemId>(id);
    }
    return inverse_[a];
  }

  // Cyclic-product helpers (tuple view of an element id).
  const std::vector<std::uint32_t>& moduli() const {
    require(Backend::cyclic_product);
    return radix_.radii;
  }
  std::vector<std::uint32_t> decode(ElemId a) const {
    require(Backend::cyclic_product);
    check_id(a);
    std::vector<std::uint32_t> digits(radix_.radii.size());
    for (std::size_t i = 0; i < digits.size(); ++i)
      digits[i] = radix_.digit(a, i);
    return digits;
  }
  ElemId encode(std::span<const std::uint32_t> digits) const {
    require(Backend::cyclic_product);
    if (digits.size() != radix_.radii.size())
      throw std::invalid_argument("tuple arity mismatch");
    for (std::size_t i = 0; i < digits.size(); ++i)
      if (digits[i] >= radix_.radii[i])
        throw IdOutOfRange("tuple digit out of range");
    return static_cast<ElemId>(radix_.encode(digits));
  }

  // Permutation-backend helpers.
  std::uint32_t degree() const {
    require(Backend::permutation_closure);
    return degree_;
  }
  const std::vector<std::uint32_t>& permutation(ElemId a) const {
    require(Backend::permutation_closure);
    check_id(a);
    return perms_[a];
  }

 private:
  FiniteGroup() = default;

  void check_id(ElemId a) const {
    if (a >= n_)
      throw IdOutOfRange("element id " + std::to_string(a) +
                         " out of range for group of order " +
                         std::to_string(n_));
  }
  void require(Backend b) const {
    if (backend_ != b) throw Error("operation requires a different backend");
  }

  ElemId mul_backend(ElemId a, ElemId b) const {
    switch (backend_) {
      case Backend::cayley_table:
        return table_[static_cast<std::size_t>(a) * n_ + b];
      case Backend::cyclic_product: {
        std::uint64_t id = 0;
        for (std::size_t i = 0; i < radix_.radii.size(); ++i) {
          std::uint32_t m = radix_.radii[i];
          std::uint32_t s = radix_.digit(a, i) + radix_.digit(b, i);
          if (s >= m) s -= m;
          id += static_cast<std::uint64_t>(s) * radix_.place[i];
        }
        return static_cast<ElemId>(id);
      }
      case Backend::permutation_closure: {
        std::vector<std::uint32_t> prod(degree_);
        for (std::uint32_t p = 0; p < degree_; ++p)
          prod[p] = perms_[a][perms_[b][p]];
        return perm_index_.at(prod);
      }
    }
    return 0;  // unreachable
  }

  void maybe_build_dense() {
    if (backend_ == Backend::cayley_table) return;
    if (n_ == 0 || n_ > kDenseTableLimit) return;
    dense_.resize(static_cast<std::size_t>(n_) * n_);
    for (ElemId a = 0; a < n_; ++a)
      for (ElemId b = 0; b < n_; ++b)
        dense_[static_cast<std::size_t>(a) * n_ + b] =
            static_cast<std::uint16_t>(mul_backend(a, b));
  }

  Backend backend_ = Backend::cyclic_product;
  std::uint32_t n_ = 1;
  ElemId identity_ = 0;

  std::vector<std::uint16_t> table_;  // cayley_table backend
  std::vector<ElemId> inverse_;       // cayley_table / permutation_closure

  detail::MixedRadix radix_;  // cyclic_product backend

  std::uint32_t degree_ = 0;  // permutation_closure backend
  std::vector<std::vector<std::uint32_t>> perms_;
  std::unordered_map<std::vector<std::uint32_t>, ElemId, detail::PermHash>
      perm_index_;

  std::vector<std::uint16_t> dense_;  // optional materialized table
};

inline FiniteGroup FiniteGroup::from_table(std::uint32_t n,
                                           std::vector<std::uint16_t> table) {
  if (n == 0) throw NonSquareTable("empty table");
  if (n > 65535) throw OverflowOrder("table order exceeds 65535");
  if (table.size() != static_cast<std::size_t>(n) * n)
    throw NonSquareTable("table has " + std::to_string(table.size()) +
                         " entries, expected " + std::to_string(n) + "^2");
  auto at = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    return table[static_cast<std::size_t>(a) * n + b];
  };

  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (at(a, b) >= n)
        throw NotAGroup("closure", {a, b, at(a, b)},
                        "table entry out of range at (" + std::to_string(a) +
                            "," + std::to_string(b) + ")");

  // Latin property: each row and column is a permutation of [0, n).
  std::vector<char> seen(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t b = 0; b < n; ++b) {
      if (seen[at(a, b)])
        throw NotAGroup("latin-row", {a, b, at(a, b)},
                        "row " + std::to_string(a) + " repeats entry");
      seen[at(a, b)] = 1;
    }
  }
  for (std::uint32_t b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      if (seen[at(a, b)])
        throw NotAGroup("latin-column", {a, b, at(a, b)},
                        "column " + std::to_string(b) + " repeats entry");
      seen[at(a, b)] = 1;
    }
  }

  // Identity: scan for the row equal to the column-index sequence, then
  // confirm the matching column.
  std::uint32_t identity = n;
  for (std::uint32_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::uint32_t b = 0; b < n && ok; ++b) ok = at(e, b) == b;
    for (std::uint32_t a = 0; a < n && ok; ++a) ok = at(a, e) == a;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity == n)
    throw NotAGroup("identity", {0, 0, 0}, "no two-sided identity row");

  // Associativity: exhaustive up to order 64, seeded random triples above.
  auto assoc_check = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (at(at(a, b), c) != at(a, at(b, c)))
      throw NotAGroup("associativity", {a, b, c},
                      "(a*b)*c != a*(b*c) at (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= 64) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c) assoc_check(a, b, c);
  } else {
    SplitMix64 rng(0xA55A0FF1CE000000ULL ^ n);
    for (std::uint64_t i = 0; i < 10ULL * n; ++i) {
      std::uint32_t a = static_cast<std::uint32_t>(rng.below(n));
      std::uint32_t b = static_cast<std::uint32_t>(rng.below(n));
      std::uint32_t c = static_cast<std::uint32_t>(rng.below(n));
      assoc_check(a, b, c);
    }
  }

  std::vector<ElemId> inverse(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    std::uint32_t found = n;
    for (std::uint32_t b = 0; b < n; ++b)
      if (at(a, b) == identity && at(b, a) == identity) {
        found = b;
        break;
      }
    if (found == n)
      throw NotAGroup("inverse", {a, 0, 0},
                      "element " + std::to_string(a) + " has no inverse");
    inverse[a] = found;
  }

  FiniteGroup g;
  g.backend_ = Backend::cayley_table;
  g.n_ = n;
  g.identity_ = identity;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  return g;
}

// ---- Cayley table text format ----
// Line 1: the order n. Lines 2..n+1: n space-separated ids, row i column j
// holding the id of (element i) * (element j).

inline FiniteGroup load_cayley_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = -1;
  if (!(in >> n) || n < 1) throw NonSquareTable("missing or bad order line");
  if (n > 65535) throw OverflowOrder("table order exceeds 65535");
  std::vector<std::uint16_t> table;
  table.reserve(static_cast<std::size_t>(n) * n);
  long long v;
  while (in >> v) {
    if (v < 0 || v > 65535) throw ParseError("table entry out of range");
    table.push_back(static_cast<std::uint16_t>(v));
  }
  if (!in.eof()) throw ParseError("non-integer token in table");
  if (table.size() != static_cast<std::size_t>(n) * n)
    throw NonSquareTable("expected " + std::to_string(n * n) +
                         " entries, found " + std::to_string(table.size()));
  return FiniteGroup::from_table(static_cast<std::uint32_t>(n),
                                 std::move(table));
}

inline std::string save_cayley_table(const FiniteGroup& g) {
  std::ostringstream out;
  out << g.order() << "\n";
  for (ElemId a = 0; a < g.order(); ++a) {
    for (ElemId b = 0; b < g.order(); ++b) {
      if (b) out << ' ';
      out << g.mul(a, b);
    }
    out << "\n";
  }
  return out.str();
}

// ---- permutation generator file ----
// Line 1: "perm d". Each following nonempty line: d space-separated images.

inline FiniteGroup load_permutation_group(
    std::string_view text, std::uint32_t closure_cap = kDefaultClosureCap) {
  std::istringstream in{std::string(text)};
  std::string tag;
  std::uint32_t degree = 0;
  if (!(in >> tag >> degree) || tag != "perm" || degree == 0)
    throw ParseError("permutation file must start with 'perm d'");
  std::vector<std::vector<std::uint32_t>> gens;
  long long v;
  std::vector<std::uint32_t> cur;
  while (in >> v) {
    if (v < 0) throw ParseError("negative image in permutation file");
    cur.push_back(static_cast<std::uint32_t>(v));
    if (cur.size() == degree) {
      gens.push_back(cur);
      cur.clear();
    }
  }
  if (!in.eof()) throw ParseError("non-integer token in permutation file");
  if (!cur.empty()) throw ParseError("trailing partial permutation");
  if (gens.empty()) throw ParseError("no generators in permutation file");
  try {
    return FiniteGroup::permutation_closure(degree, std::move(gens),
                                            closure_cap);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// Least n >= 1 with a^n = identity.
inline std::uint64_t element_order(const FiniteGroup& g, ElemId a) {
  if (g.backend() == Backend::cyclic_product) {
    auto digits = g.decode(a);
    const auto& mod = g.moduli();
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      std::uint64_t mi = mod[i] / std::gcd<std::uint64_t>(digits[i], mod[i]);
      ord = std::lcm(ord, mi);
    }
    return ord;
  }
  std::uint64_t ord = 1;
  ElemId cur = a;
  while (cur != g.identity()) {
    cur = g.mul(cur, a);
    ++ord;
  }
  return ord;
}

// ---- subgroups ----

// Canonical form: members sorted ascending. The parent pointer is non-owning;
// the group must outlive the subgroup.
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<ElemId> members;

  std::uint32_t order() const {
    return static_cast<std::uint32_t>(members.size());
  }
  bool contains(ElemId a) const {
    return std::binary_search(members.begin(), members.end(), a);
  }
};

inline Subgroup whole_group(const FiniteGroup& g) {
  Subgroup h;
  h.parent = &g;
  h.members.resize(g.order());
  for (ElemId a = 0; a < g.order(); ++a) h.members[a] = a;
  return h;
}

// Smallest subgroup containing the seed elements (closure under products;
// inverses come for free in a finite group).
inline Subgroup subgroup_closure(const FiniteGroup& g,
                                 std::span<const ElemId> seeds) {
  std::vector<char> in(g.order(), 0);
  std::vector<ElemId> list;
  auto add = [&](ElemId e) {
    if (!in[e]) {
      in[e] = 1;
      list.push_back(e);
    }
  };
  add(g.identity());
  for (ElemId s : seeds) add(s);
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      add(g.mul(list[i], list[j]));
      add(g.mul(list[j], list[i]));
    }
  }
  std::sort(list.begin(), list.end());
  return Subgroup{&g, std::move(list)};
}

// First pair of subgroup members that fails to commute, if any.
inline bool find_noncommuting_pair(const FiniteGroup& g,
                                   std::span<const ElemId> members, ElemId* a,
                                   ElemId* b) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (g.mul(members[i], members[j]) != g.mul(members[j], members[i])) {
        *a = members[i];
        *b = members[j];
        return true;
      }
  return false;
}

// ---- coset partitions ----

struct CosetPartition {
  std::vector<ElemId> reps;          // minimal id per coset, ascending
  std::vector<std::uint32_t> index;  // element id -> coset index
};

inline CosetPartition left_cosets(const FiniteGroup& g, const Subgroup& h) {
  CosetPartition p;
  p.index.assign(g.order(), UINT32_MAX);
  for (ElemId a = 0; a < g.order(); ++a) {
    if (p.index[a] != UINT32_MAX) continue;
    std::uint32_t ci = static_cast<std::uint32_t>(p.reps.size());
    p.reps.push_back(a);
    for (ElemId m : h.members) p.index[g.mul(a, m)] = ci;
  }
  return p;
}

inline CosetPartition right_cosets(const FiniteGroup& g, const Subgroup& h) {
  CosetPartition p;
  p.index.assign(g.order(), UINT32_MAX);
  for (ElemId a = 0; a < g.order(); ++a) {
    if (p.index[a] != UINT32_MAX) continue;
    std::uint32_t ci = static_cast<std::uint32_t>(p.reps.size());
    p.reps.push_back(a);
    for (ElemId m : h.members) p.index[g.mul(m, a)] = ci;
  }
  return p;
}

}  // namespace dwf
