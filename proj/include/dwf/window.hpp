#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dwf/abelian.hpp"
#include "dwf/bitmatrix.hpp"
#include "dwf/errors.hpp"
#include "dwf/group.hpp"
#include "dwf/pairset.hpp"
#include "dwf/rational.hpp"

namespace dwf {

enum class ConstructionCase { large_factor, popular_factor };

// Parameter bundle for the coset-window construction. In the large_factor
// case rho = 0 and t = k with m_1 > k; in the popular_factor case the first
// rho+1 factors all equal m and t < m, with t*m^rho <= k < (t+1)*m^rho
// whenever no clamping occurred. window_size is w = t*m^rho - 1.
struct WindowParams {
  ConstructionCase kase = ConstructionCase::large_factor;
  std::uint32_t m = 0;
  std::uint32_t t = 0;
  std::uint32_t rho = 0;
  std::uint32_t k = 0;
  std::uint64_t window_size = 0;
  bool degraded = false;  // rho clamped below the ideal floor(log_m k)
  ElemId ell = 0;
  ElemId r = 0;
};

struct Triple {
  ElemId a = 0, b = 0, ab = 0;
};

// The assembled output: base points (x, y), the two window sets, their
// product set, the spanning set E, and every triple the chosen window
// contains, together with the pigeonhole guarantee it must meet.
struct Witness {
  WindowParams params;
  ElemId x = 0, y = 0;
  std::vector<ElemId> a1;
  std::vector<ElemId> a2;
  std::vector<ElemId> product_set;
  std::vector<ElemId> spanning_set;
  std::vector<Triple> triples;
  std::uint64_t triple_count = 0;
  std::uint64_t guarantee = 0;
};

enum class CosetSpaceCheck { enforce, relaxed };

// ---- parameter selection ----

inline WindowParams select_parameters(
    std::uint32_t k, const AbelianDecomposition& d,
    CosetSpaceCheck check = CosetSpaceCheck::enforce) {
  if (k < 2) throw InfeasibleParameters("k must be at least 2");
  if (d.tau() == 0)
    throw InfeasibleParameters("trivial subgroup admits no window");

  WindowParams p;
  p.k = k;

  bool has_large = false;
  for (std::uint32_t m : d.factors) has_large |= (m > k);

  if (has_large) {
    if (d.factors[0] <= k)
      throw Error("decomposition must be reordered for k before selection");
    p.kase = ConstructionCase::large_factor;
    p.m = d.factors[0];
    p.rho = 0;
    p.t = k;
  } else {
    p.kase = ConstructionCase::popular_factor;
    std::map<std::uint32_t, std::uint32_t> mult;
    for (std::uint32_t m : d.factors) ++mult[m];
    std::uint32_t lambda = 0, m = 0;
    for (auto [value, count] : mult)
      if (count > lambda) {
        lambda = count;
        m = value;
      }
    for (std::uint32_t i = 0; i < lambda; ++i)
      if (d.factors[i] != m)
        throw Error("decomposition must be reordered for k before selection");

    std::uint32_t ideal_rho = 0;
    std::uint64_t pw = 1;
    while (pw * m <= k) {
      pw *= m;
      ++ideal_rho;
    }
    p.m = m;
    p.rho = std::min(ideal_rho, lambda - 1);
    p.degraded = p.rho < ideal_rho;
    std::uint64_t m_rho = 1;
    for (std::uint32_t i = 0; i < p.rho; ++i) m_rho *= m;
    p.t = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(m - 1, k / m_rho));
  }

  std::uint64_t m_rho = 1;
  for (std::uint32_t i = 0; i < p.rho; ++i) m_rho *= p.m;
  p.window_size = static_cast<std::uint64_t>(p.t) * m_rho - 1;
  if (p.window_size < 1)
    throw InfeasibleParameters(
        "window size t*m^rho - 1 vanishes (t=" + std::to_string(p.t) +
        ", m=" + std::to_string(p.m) + ", rho=" + std::to_string(p.rho) + ")");

  if (check == CosetSpaceCheck::enforce &&
      d.h_order() < 4 * (p.window_size + 1))
    throw InsufficientCosetSpace(
        "|H| = " + std::to_string(d.h_order()) + " < 4*(w+1) = " +
        std::to_string(4 * (p.window_size + 1)));
  return p;
}

// ---- window sets ----

namespace detail {

// The coordinate box { g_1^{s_1} ... g_rho^{s_rho} g_{rho+1}^s :
// 0 <= s_i < m, 0 <= s < t }, base point included, enumerated with an
// odometer. Distinctness is verified; a collision means the decomposition
// does not match the parameters.
inline std::vector<ElemId> window_box(const FiniteGroup& g,
                                      const AbelianDecomposition& d,
                                      const WindowParams& p) {
  const std::uint32_t dims = p.rho + 1;
  if (d.tau() < dims)
    throw InfeasibleParameters("rho + 1 exceeds the number of factors");
  std::vector<std::uint32_t> limit(dims, p.m);
  limit[dims - 1] = p.t;

  std::uint64_t total = 1;
  for (std::uint32_t l : limit) total *= l;

  std::vector<ElemId> box;
  box.reserve(total);
  std::vector<std::uint32_t> digit(dims, 0);
  std::vector<ElemId> prefix(dims + 1, g.identity());
  for (std::uint64_t idx = 0;; ++idx) {
    box.push_back(prefix[dims]);
    if (idx + 1 == total) break;
    std::size_t i = dims;
    while (digit[i - 1] + 1 == limit[i - 1]) {
      digit[i - 1] = 0;
      --i;
    }
    ++digit[i - 1];
    prefix[i] =
        g.mul(prefix[i - 1], power(g, d.generators[i - 1], digit[i - 1]));
    for (std::size_t j = i; j < dims; ++j) prefix[j + 1] = prefix[j];
  }

  std::vector<ElemId> dedup = box;
  std::sort(dedup.begin(), dedup.end());
  if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end())
    throw Error("window box is degenerate: generator powers collide");
  return box;
}

}  // namespace detail

// A^(1): ell * x * (box) with the base point ell*x removed; a subset of
// ell*H with exactly t*m^rho - 1 elements.
inline std::vector<ElemId> build_a1(const FiniteGroup& g,
                                    const AbelianDecomposition& d,
                                    const WindowParams& p, ElemId x) {
  if (!d.subgroup.contains(x))
    throw IdOutOfRange("window base point x lies outside H");
  auto box = detail::window_box(g, d, p);
  ElemId base = g.mul(p.ell, x);
  std::vector<ElemId> out;
  out.reserve(box.size() - 1);
  for (ElemId b : box) {
    ElemId e = g.mul(base, b);
    if (e != base) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// A^(2): x * (box) * r with x*r removed; a subset of H*r, same size.
inline std::vector<ElemId> build_a2(const FiniteGroup& g,
                                    const AbelianDecomposition& d,
                                    const WindowParams& p, ElemId y) {
  if (!d.subgroup.contains(y))
    throw IdOutOfRange("window base point y lies outside H");
  auto box = detail::window_box(g, d, p);
  std::vector<ElemId> out;
  out.reserve(box.size() - 1);
  for (ElemId b : box) {
    ElemId hb = g.mul(y, b);
    if (hb != y) out.push_back(g.mul(hb, p.r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Two-sided product set {u*v}. Its size never exceeds 2*(t*m^rho - 1) when H
// is abelian; exceeding the bound throws.
inline std::vector<ElemId> product_set(const FiniteGroup& g,
                                       std::span<const ElemId> a1,
                                       std::span<const ElemId> a2,
                                       std::uint64_t window_size) {
  std::vector<ElemId> out;
  out.reserve(a1.size() * a2.size());
  for (ElemId u : a1)
    for (ElemId v : a2) out.push_back(g.mul(u, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > 2 * window_size)
    throw ProductBoundViolated(
        "|A1*A2| = " + std::to_string(out.size()) + " exceeds 2w = " +
        std::to_string(2 * window_size));
  return out;
}

// Pairs of the window at (x, y) that belong to S.
inline std::uint64_t count_window(const PairSet& s, const FiniteGroup& g,
                                  const AbelianDecomposition& d,
                                  const WindowParams& p, ElemId x, ElemId y) {
  auto a1 = build_a1(g, d, p, x);
  auto a2 = build_a2(g, d, p, y);
  std::uint64_t c = 0;
  for (ElemId u : a1)
    for (ElemId v : a2) c += s.test(u, v) ? 1 : 0;
  return c;
}

// ---- coset pair choice ----

struct CosetChoice {
  ElemId ell = 0;
  ElemId r = 0;
  std::uint64_t pair_count = 0;  // |S ∩ (ell*H × H*r)|
  Rational window_density;
};

// Argmax of |S ∩ (ell*H × H*r)| over coset representatives (minimal id per
// coset), ties to the smallest ell then r. Averaging guarantees the maximum
// is at least density(S) * |H|^2.
inline CosetChoice choose_coset_pair(const PairSet& s, const FiniteGroup& g,
                                     const Subgroup& h) {
  const std::uint32_t n = g.order();
  if (s.group_order() != n)
    throw std::invalid_argument("pair set order does not match group");
  CosetPartition lp = left_cosets(g, h);
  CosetPartition rp = right_cosets(g, h);
  const std::size_t nl = lp.reps.size(), nr = rp.reps.size();
  const std::uint64_t wpr = s.words_per_row();

  // One bit mask per right coset lets each row be charged per coset with a
  // single AND+popcount sweep.
  std::vector<std::uint64_t> masks(nr * wpr, 0);
  for (ElemId b = 0; b < n; ++b)
    masks[rp.index[b] * wpr + (b >> 6)] |= (1ULL << (b & 63));

  std::vector<std::uint64_t> counts(nl * nr, 0);
  for (ElemId a = 0; a < n; ++a) {
    auto row = s.row(a);
    std::uint64_t* dst = counts.data() + static_cast<std::size_t>(lp.index[a]) * nr;
    for (std::size_t rc = 0; rc < nr; ++rc) {
      const std::uint64_t* m = masks.data() + rc * wpr;
      std::uint64_t c = 0;
      for (std::uint64_t w = 0; w < wpr; ++w)
        c += std::popcount(row[w] & m[w]);
      dst[rc] += c;
    }
  }

  CosetChoice best;
  std::uint64_t best_count = 0;
  bool first = true;
  for (std::size_t li = 0; li < nl; ++li)
    for (std::size_t ri = 0; ri < nr; ++ri) {
      std::uint64_t c = counts[li * nr + ri];
      if (first || c > best_count) {
        first = false;
        best_count = c;
        best.ell = lp.reps[li];
        best.r = rp.reps[ri];
      }
    }
  best.pair_count = best_count;
  std::uint64_t hsq = static_cast<std::uint64_t>(h.order()) * h.order();
  best.window_density = Rational(best_count, hsq);
  return best;
}

// ---- best-window scan ----

namespace detail {

template <class Fn>
inline void parallel_chunks(std::uint64_t total, unsigned threads, Fn&& fn) {
  if (total == 0) return;
  unsigned nt =
      threads < 2 ? 1u
                  : static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
  if (nt == 1) {
    fn(std::uint64_t{0}, total, 0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::uint64_t base = total / nt, rem = total % nt, begin = 0;
  for (unsigned c = 0; c < nt; ++c) {
    std::uint64_t len = base + (c < rem ? 1 : 0);
    std::uint64_t lo = begin, hi = begin + len;
    pool.emplace_back([&fn, lo, hi, c] { fn(lo, hi, c); });
    begin = hi;
  }
  for (auto& t : pool) t.join();
}

struct ScanBest {
  std::uint64_t count = 0;
  std::uint32_t x = UINT32_MAX;
  std::uint32_t y = UINT32_MAX;
  bool valid = false;
};

inline constexpr std::uint32_t kCountMatrixMaxH = 8192;

}  // namespace detail

// Exhaustive scan over (x, y) in H^2 for the window with the most pairs from
// S. Counting kernel: S is restricted to the coset window as an |H| x |H|
// bit matrix W; per-row-per-base counts C[i][y] = |W_i ∩ A2(y)| are built
// once with AND+popcount sweeps, after which each (x, ·) row of counts is a
// sum of w rows of C. The (x, y) scan may be partitioned across threads;
// the reduction keeps the maximum with the global lexicographic tie-break,
// so the result is identical for every thread count.
inline Witness find_best_window(const PairSet& s, const FiniteGroup& g,
                                const AbelianDecomposition& d,
                                const WindowParams& p, unsigned threads = 1) {
  const Subgroup& h = d.subgroup;
  const std::uint32_t hsz = h.order();
  const std::uint64_t w = p.window_size;
  if (w > 65535) throw CapExceeded("window size exceeds the scan kernel cap");

  std::vector<std::uint32_t> pos_of(g.order(), UINT32_MAX);
  for (std::uint32_t i = 0; i < hsz; ++i) pos_of[h.members[i]] = i;

  // S restricted to ell*H x H*r, indexed by member position.
  BitMatrix win(hsz);
  std::vector<ElemId> lelem(hsz), relem(hsz);
  for (std::uint32_t i = 0; i < hsz; ++i) {
    lelem[i] = g.mul(p.ell, h.members[i]);
    relem[i] = g.mul(h.members[i], p.r);
  }
  std::uint64_t window_pairs = 0;
  for (std::uint32_t i = 0; i < hsz; ++i)
    for (std::uint32_t j = 0; j < hsz; ++j)
      if (s.test(lelem[i], relem[j])) {
        win.set(i, j);
        ++window_pairs;
      }

  auto box = detail::window_box(g, d, p);

  // Window memberships in H coordinates: row indices of A1(x) and the bit
  // mask of A2(y), per base position.
  std::vector<std::uint32_t> rowsel(static_cast<std::size_t>(hsz) * w);
  const std::uint64_t wpr = win.words_per_row();
  std::vector<std::uint64_t> ymask(static_cast<std::size_t>(hsz) * wpr, 0);
  for (std::uint32_t xp = 0; xp < hsz; ++xp) {
    std::size_t out = static_cast<std::size_t>(xp) * w;
    for (ElemId b : box) {
      ElemId e = g.mul(h.members[xp], b);
      if (e == h.members[xp]) continue;
      std::uint32_t pos = pos_of[e];
      if (pos == UINT32_MAX) throw Error("window left the subgroup");
      rowsel[out++] = pos;
      ymask[static_cast<std::size_t>(xp) * wpr + (pos >> 6)] |=
          (1ULL << (pos & 63));
    }
    if (out != static_cast<std::size_t>(xp) * w + w)
      throw Error("window size mismatch while scanning");
  }

  const unsigned nt = threads < 1 ? 1 : threads;
  std::vector<detail::ScanBest> bests(std::max(nt, 1u));

  if (hsz <= detail::kCountMatrixMaxH) {
    // C[i][y] built in 64-wide y tiles so the mask block stays cache hot.
    std::vector<std::uint16_t> cmat(static_cast<std::size_t>(hsz) * hsz);
    for (std::uint32_t ytile = 0; ytile < hsz; ytile += 64) {
      const std::uint32_t yend = std::min<std::uint32_t>(ytile + 64, hsz);
      detail::parallel_chunks(
          hsz, nt,
          [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
            for (std::uint64_t i = lo; i < hi; ++i) {
              auto wrow = win.row(static_cast<std::uint32_t>(i));
              for (std::uint32_t y = ytile; y < yend; ++y) {
                const std::uint64_t* m = ymask.data() + std::size_t(y) * wpr;
                std::uint64_t c = 0;
                for (std::uint64_t ww = 0; ww < wpr; ++ww)
                  c += std::popcount(wrow[ww] & m[ww]);
                cmat[i * hsz + y] = static_cast<std::uint16_t>(c);
              }
            }
          });
    }

    detail::parallel_chunks(
        hsz, nt, [&](std::uint64_t lo, std::uint64_t hi, unsigned chunk) {
          std::vector<std::uint32_t> acc(hsz);
          detail::ScanBest local;
          for (std::uint64_t xp = lo; xp < hi; ++xp) {
            std::fill(acc.begin(), acc.end(), 0);
            const std::uint32_t* sel = rowsel.data() + xp * w;
            for (std::uint64_t wi = 0; wi < w; ++wi) {
              const std::uint16_t* crow =
                  cmat.data() + static_cast<std::size_t>(sel[wi]) * hsz;
              for (std::uint32_t y = 0; y < hsz; ++y) acc[y] += crow[y];
            }
            for (std::uint32_t y = 0; y < hsz; ++y)
              if (!local.valid || acc[y] > local.count) {
                local.valid = true;
                local.count = acc[y];
                local.x = static_cast<std::uint32_t>(xp);
                local.y = y;
              }
          }
          bests[chunk] = local;
        });
  } else {
    // Memory-light fallback: per (x, y), intersect the w selected rows with
    // the A2 mask directly.
    detail::parallel_chunks(
        hsz, nt, [&](std::uint64_t lo, std::uint64_t hi, unsigned chunk) {
          detail::ScanBest local;
          for (std::uint64_t xp = lo; xp < hi; ++xp) {
            const std::uint32_t* sel = rowsel.data() + xp * w;
            for (std::uint32_t y = 0; y < hsz; ++y) {
              const std::uint64_t* m = ymask.data() + std::size_t(y) * wpr;
              std::uint64_t c = 0;
              for (std::uint64_t wi = 0; wi < w; ++wi) {
                auto wrow = win.row(sel[wi]);
                for (std::uint64_t ww = 0; ww < wpr; ++ww)
                  c += std::popcount(wrow[ww] & m[ww]);
              }
              if (!local.valid || c > local.count) {
                local.valid = true;
                local.count = c;
                local.x = static_cast<std::uint32_t>(xp);
                local.y = y;
              }
            }
          }
          bests[chunk] = local;
        });
  }

  detail::ScanBest best;
  for (const auto& b : bests) {
    if (!b.valid) continue;
    if (!best.valid || b.count > best.count) best = b;
  }
  if (!best.valid) throw Error("window scan found no candidate");

  Witness wit;
  wit.params = p;
  wit.x = h.members[best.x];
  wit.y = h.members[best.y];
  wit.a1 = build_a1(g, d, p, wit.x);
  wit.a2 = build_a2(g, d, p, wit.y);
  if (wit.a1.size() != w || wit.a2.size() != w)
    throw Error("window set size disagrees with t*m^rho - 1");
  wit.product_set = product_set(g, wit.a1, wit.a2, w);

  wit.spanning_set = wit.a1;
  wit.spanning_set.insert(wit.spanning_set.end(), wit.a2.begin(),
                          wit.a2.end());
  wit.spanning_set.insert(wit.spanning_set.end(), wit.product_set.begin(),
                          wit.product_set.end());
  std::sort(wit.spanning_set.begin(), wit.spanning_set.end());
  wit.spanning_set.erase(
      std::unique(wit.spanning_set.begin(), wit.spanning_set.end()),
      wit.spanning_set.end());
  if (wit.spanning_set.size() > 4 * w)
    throw ProductBoundViolated("spanning set exceeds 4w");

  for (ElemId u : wit.a1)
    for (ElemId v : wit.a2)
      if (s.test(u, v)) wit.triples.push_back({u, v, g.mul(u, v)});
  wit.triple_count = wit.triples.size();
  if (wit.triple_count != best.count)
    throw Error("scan kernel and direct recount disagree");

  std::uint64_t hsq = static_cast<std::uint64_t>(hsz) * hsz;
  unsigned __int128 num = (unsigned __int128)window_pairs * w * w;
  wit.guarantee = static_cast<std::uint64_t>((num + hsq - 1) / hsq);
  if (wit.triple_count < wit.guarantee)
    throw GuaranteeViolated(
        "best window holds " + std::to_string(wit.triple_count) +
        " pairs, below the pigeonhole bound " + std::to_string(wit.guarantee));
  return wit;
}

// ---- cyclic interval model ----

// The length-k interval {x, x+1, ..., x+k-1} in Z_n, base point kept.
// Requires the standard cyclic presentation (element 1 generates) and
// n >= 4k.
inline std::vector<ElemId> model_interval_window(const FiniteGroup& g,
                                                 std::uint32_t k, ElemId x) {
  const std::uint32_t n = g.order();
  if (k < 1) throw InfeasibleParameters("interval needs k >= 1");
  if (n < 2 || element_order(g, 1) != n)
    throw std::invalid_argument(
        "interval model requires the standard Z_n presentation");
  if (n < 4 * static_cast<std::uint64_t>(k))
    throw IntervalTooLarge("n = " + std::to_string(n) + " < 4k = " +
                           std::to_string(4 * static_cast<std::uint64_t>(k)));
  std::vector<ElemId> out;
  out.reserve(k);
  ElemId cur = x;
  for (std::uint32_t i = 0; i < k; ++i) {
    out.push_back(cur);
    cur = g.mul(cur, 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- witness report format ----

inline std::string witness_report(const Witness& w) {
  std::ostringstream out;
  out << "witness\n";
  out << "k " << w.params.k << "\n";
  out << "w " << w.params.window_size << "\n";
  out << "case "
      << (w.params.kase == ConstructionCase::large_factor ? "large_factor"
                                                          : "popular_factor")
      << "\n";
  out << "ell " << w.params.ell << "\n";
  out << "r " << w.params.r << "\n";
  out << "x " << w.x << "\n";
  out << "y " << w.y << "\n";
  out << "guarantee " << w.guarantee << "\n";
  out << "count " << w.triple_count << "\n";
  out << "spanning " << w.spanning_set.size() << "\n";
  for (std::size_t i = 0; i < w.spanning_set.size(); ++i) {
    if (i) out << ' ';
    out << w.spanning_set[i];
  }
  out << "\n";
  out << "triples " << w.triples.size() << "\n";
  for (const Triple& t : w.triples)
    out << t.a << " " << t.b << " " << t.ab << "\n";
  return out.str();
}

// Parses a report back into a Witness. The a1/a2/product fields are not part
// of the wire format and come back empty; verification on parsed witnesses
// checks spanning membership instead.
inline Witness parse_witness_report(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  if (!(in >> tok) || tok != "witness")
    throw ParseError("missing 'witness' header");
  auto read_u64 = [&](const char* key) -> std::uint64_t {
    std::string k;
    long long v;
    if (!(in >> k >> v) || k != key || v < 0)
      throw ParseError(std::string("bad or missing field '") + key + "'");
    return static_cast<std::uint64_t>(v);
  };
  Witness w;
  w.params.k = static_cast<std::uint32_t>(read_u64("k"));
  w.params.window_size = read_u64("w");
  std::string key, value;
  if (!(in >> key >> value) || key != "case" ||
      (value != "large_factor" && value != "popular_factor"))
    throw ParseError("bad or missing field 'case'");
  w.params.kase = value == "large_factor" ? ConstructionCase::large_factor
                                          : ConstructionCase::popular_factor;
  w.params.ell = static_cast<ElemId>(read_u64("ell"));
  w.params.r = static_cast<ElemId>(read_u64("r"));
  w.x = static_cast<ElemId>(read_u64("x"));
  w.y = static_cast<ElemId>(read_u64("y"));
  w.guarantee = read_u64("guarantee");
  w.triple_count = read_u64("count");

  std::uint64_t span_size = read_u64("spanning");
  w.spanning_set.reserve(span_size);
  for (std::uint64_t i = 0; i < span_size; ++i) {
    long long id;
    if (!(in >> id) || id < 0) throw ParseError("truncated spanning list");
    w.spanning_set.push_back(static_cast<ElemId>(id));
  }
  for (std::size_t i = 1; i < w.spanning_set.size(); ++i)
    if (w.spanning_set[i - 1] >= w.spanning_set[i])
      throw ParseError("spanning ids not strictly increasing");

  std::uint64_t triple_count = read_u64("triples");
  w.triples.reserve(triple_count);
  for (std::uint64_t i = 0; i < triple_count; ++i) {
    long long a, b, ab;
    if (!(in >> a >> b >> ab) || a < 0 || b < 0 || ab < 0)
      throw ParseError("truncated triple list");
    w.triples.push_back({static_cast<ElemId>(a), static_cast<ElemId>(b),
                         static_cast<ElemId>(ab)});
  }
  return w;
}

// ---- end-to-end pipeline ----

struct PipelineOptions {
  unsigned threads = 1;
  SubgroupPreference subgroup_preference = SubgroupPreference::max_order;
};

struct PipelineResult {
  Subgroup h;
  AbelianDecomposition decomposition;
  WindowParams params;
  CosetChoice coset;
  Witness witness;
  RegimeReport regime;
};

// find_large_abelian_subgroup -> decompose_abelian -> reorder_factors ->
// select_parameters -> choose_coset_pair -> find_best_window, with the
// regime report alongside. Bit-reproducible for any thread count.
inline PipelineResult run_pipeline(const FiniteGroup& g, const PairSet& s,
                                   std::uint32_t k,
                                   const PipelineOptions& opts = {}) {
  if (g.order() < 2) throw InfeasibleParameters("group order must be >= 2");
  if (s.group_order() != g.order())
    throw std::invalid_argument("pair set order does not match group");
  if (s.cardinality() == 0) throw InfeasibleParameters("empty pair set");

  PipelineResult res;
  res.h = find_large_abelian_subgroup(g, opts.subgroup_preference);
  res.decomposition = reorder_factors(decompose_abelian(res.h), k);
  res.params = select_parameters(k, res.decomposition);
  res.coset = choose_coset_pair(s, g, res.h);
  res.params.ell = res.coset.ell;
  res.params.r = res.coset.r;
  res.witness = find_best_window(s, g, res.decomposition, res.params,
                                 opts.threads);
  res.regime = regime_report(res.decomposition, k);
  return res;
}

}  // namespace dwf
