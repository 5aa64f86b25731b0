#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "shkit/algebra.hpp"
#include "shkit/catalog.hpp"
#include "shkit/term.hpp"

namespace shkit {

class SearchSpaceExceeded : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

constexpr std::uint64_t kDefaultNodeCap = 10'000'000;
constexpr int kMaxEnumerationSize = 16;

// ---------------------------------------------------------------------------
// Posets of join-irreducibles.

struct Poset {
  int n = 0;
  std::vector<std::uint8_t> le;  // le[i*n+j] != 0  iff  i <= j

  bool leq(int i, int j) const {
    return le[static_cast<std::size_t>(i) * n + j] != 0;
  }
};

namespace detail {

// All downsets of a poset, as bitmasks, discovered bottom-up together with
// the cover edges of the downset lattice.
struct DownsetLattice {
  std::vector<std::uint32_t> masks;                 // sorted by (popcount, value)
  std::vector<std::pair<int, int>> covers;          // (lower idx, upper idx)
};

inline DownsetLattice downsets_of(const Poset& p) {
  const int n = p.n;
  std::vector<std::uint32_t> down(n, 0);  // strictly-below masks
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i && p.leq(j, i)) down[i] |= 1u << j;

  std::set<std::uint32_t> seen{0u};
  std::vector<std::uint32_t> work{0u};
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t w = 0; w < work.size(); ++w) {
    const std::uint32_t d = work[w];
    for (int e = 0; e < n; ++e) {
      if (d & (1u << e)) continue;
      if ((down[e] & ~d) != 0) continue;  // adding e would not stay a downset
      const std::uint32_t d2 = d | (1u << e);
      edges.emplace_back(d, d2);
      if (seen.insert(d2).second) work.push_back(d2);
    }
  }

  DownsetLattice out;
  out.masks.assign(seen.begin(), seen.end());
  std::sort(out.masks.begin(), out.masks.end(),
            [](std::uint32_t a, std::uint32_t b) {
              const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
              return pa != pb ? pa < pb : a < b;
            });
  std::map<std::uint32_t, int> index;
  for (std::size_t i = 0; i < out.masks.size(); ++i)
    index[out.masks[i]] = static_cast<int>(i);
  std::set<std::pair<int, int>> cov;
  for (const auto& [lo, hi] : edges) cov.emplace(index[lo], index[hi]);
  out.covers.assign(cov.begin(), cov.end());
  return out;
}

inline std::size_t downset_count(const Poset& p) {
  return downsets_of(p).masks.size();
}

// Iso-invariant vertex classes via iterated relational refinement, computed
// over a disjoint union so class ids are comparable between two structures.
inline std::vector<int> refine_poset_classes(const Poset& a, const Poset& b) {
  const int n = a.n + b.n;
  auto rel = [&](int i, int j) -> int {
    const bool ia = i < a.n, ja = j < a.n;
    if (ia != ja) return 0;
    const Poset& p = ia ? a : b;
    const int x = ia ? i : i - a.n, y = ja ? j : j - a.n;
    return (p.leq(x, y) ? 1 : 0) | (p.leq(y, x) ? 2 : 0);
  };
  std::vector<int> cls(n, 0);
  for (int round = 0; round < n; ++round) {
    std::vector<std::pair<std::vector<int>, int>> sigs(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> sig;
      sig.push_back(cls[i]);
      std::vector<int> nb;
      for (int j = 0; j < n; ++j)
        if (j != i && rel(i, j)) nb.push_back(cls[j] * 4 + rel(i, j));
      std::sort(nb.begin(), nb.end());
      sig.insert(sig.end(), nb.begin(), nb.end());
      sigs[i] = {std::move(sig), i};
    }
    auto sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> next(n);
    int id = -1;
    const std::vector<int>* prev = nullptr;
    for (const auto& [sig, i] : sorted) {
      if (!prev || sig != *prev) ++id;
      next[i] = id;
      prev = &sig;
    }
    if (next == cls) break;
    cls = std::move(next);
  }
  return cls;
}

inline bool poset_isomorphic(const Poset& a, const Poset& b) {
  if (a.n != b.n) return false;
  const std::vector<int> cls = refine_poset_classes(a, b);
  std::vector<int> ca(cls.begin(), cls.begin() + a.n);
  std::vector<int> cb(cls.begin() + a.n, cls.end());
  {
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
  }
  std::vector<int> map(a.n, -1);
  std::vector<std::uint8_t> used(b.n, 0);
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == a.n) return true;
    for (int j = 0; j < b.n; ++j) {
      if (used[j] || cb[j] != ca[i]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k)
        ok = a.leq(i, k) == b.leq(j, map[k]) && a.leq(k, i) == b.leq(map[k], j);
      if (!ok) continue;
      used[j] = 1;
      map[i] = j;
      if (go(i + 1)) return true;
      used[j] = 0;
      map[i] = -1;
    }
    return false;
  };
  return go(0);
}

// Cheap iso-invariant bucket key: size, edge count, sorted self-refinement
// class multiset.
inline std::string poset_bucket_key(const Poset& p) {
  const Poset empty{};
  std::vector<int> cls = refine_poset_classes(p, empty);
  std::sort(cls.begin(), cls.end());
  int edges = 0;
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (i != j && p.leq(i, j)) ++edges;
  std::string key = std::to_string(p.n) + ":" + std::to_string(edges) + ":";
  for (int c : cls) key += static_cast<char>('0' + c % 64);
  return key;
}

// All posets with downset-lattice size <= max_size, one per isomorphism
// class, built by repeatedly attaching a new maximal element above a downset.
inline std::vector<Poset> posets_with_downset_bound(int max_size) {
  std::vector<Poset> all;
  std::vector<Poset> frontier{Poset{}};  // empty poset: 1-element lattice
  all.push_back(frontier.front());
  while (!frontier.empty()) {
    std::vector<Poset> next;
    std::map<std::string, std::vector<std::size_t>> buckets;
    for (const Poset& p : frontier) {
      const auto ds = downsets_of(p);
      for (std::uint32_t d : ds.masks) {
        Poset q;
        q.n = p.n + 1;
        q.le.assign(static_cast<std::size_t>(q.n) * q.n, 0);
        for (int i = 0; i < p.n; ++i)
          for (int j = 0; j < p.n; ++j)
            q.le[static_cast<std::size_t>(i) * q.n + j] = p.le[static_cast<std::size_t>(i) * p.n + j];
        for (int i = 0; i < q.n; ++i)
          q.le[static_cast<std::size_t>(i) * q.n + i] = 1;
        for (int i = 0; i < p.n; ++i)
          if (d & (1u << i)) q.le[static_cast<std::size_t>(i) * q.n + p.n] = 1;
        if (downset_count(q) > static_cast<std::size_t>(max_size)) continue;
        auto& bucket = buckets[poset_bucket_key(q)];
        bool dup = false;
        for (std::size_t idx : bucket) {
          if (poset_isomorphic(q, next[idx])) {
            dup = true;
            break;
          }
        }
        if (!dup) {
          bucket.push_back(next.size());
          next.push_back(std::move(q));
        }
      }
    }
    for (const Poset& q : next) all.push_back(q);
    frontier = std::move(next);
  }
  return all;
}

// ---------------------------------------------------------------------------
// Working lattices.

inline std::vector<std::string> standard_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  if (n == 1) return {"0"};
  labels.push_back("0");
  for (int i = 1; i < n - 1; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i - 1)));
  labels.push_back("1");
  return labels;
}

struct WorkLattice {
  int n = 0;
  std::vector<Elem> meet, join;  // row-major
  Elem bottom = 0, top = 0;
  CoverRelation covers;

  // Canonicalization data: canon_key is the minimal meet||join byte string
  // over bijections mapping bottom to 0 and top to n-1 (sizes <= 10); the
  // minimizers realize it and double as the automorphism coset used for
  // algebra-level canonical forms.
  std::string canon_key;
  std::vector<std::vector<Elem>> minimizers;  // new-index -> old-element

  Elem m(Elem x, Elem y) const {
    return meet[static_cast<std::size_t>(x) * n + y];
  }
  Elem j(Elem x, Elem y) const {
    return join[static_cast<std::size_t>(x) * n + y];
  }
  bool leq(Elem x, Elem y) const { return m(x, y) == x; }
};

inline std::string lattice_bytes_under(const WorkLattice& L,
                                       const std::vector<Elem>& inv_perm) {
  // inv_perm[new] = old; perm[old] = new
  const int n = L.n;
  std::vector<Elem> perm(n);
  for (int i = 0; i < n; ++i) perm[inv_perm[i]] = i;
  std::string out;
  out.reserve(2 * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out += static_cast<char>(perm[L.m(inv_perm[i], inv_perm[j])]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out += static_cast<char>(perm[L.j(inv_perm[i], inv_perm[j])]);
  return out;
}

constexpr int kCanonicalFormSizeLimit = 10;

// Fills canon_key/minimizers.  For n <= kCanonicalFormSizeLimit this is the
// exact lexicographic minimum over all bottom/top-fixing bijections; larger
// lattices keep their own labelling and use automorphisms only.
inline void canonicalize_lattice(WorkLattice& L);

inline std::vector<std::vector<Elem>> lattice_automorphisms(const WorkLattice& L) {
  const int n = L.n;
  std::vector<std::vector<Elem>> autos;
  std::vector<Elem> map(n, -1);
  std::vector<std::uint8_t> used(n, 0);
  map[L.bottom] = L.bottom;
  used[L.bottom] = 1;
  if (L.top != L.bottom) {
    map[L.top] = L.top;
    used[L.top] = 1;
  }
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (i != L.bottom && i != L.top) order.push_back(i);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == order.size()) {
      // Full verification: partial checks below only cover mapped meets.
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (map[L.m(x, y)] != L.m(map[x], map[y]) ||
              map[L.j(x, y)] != L.j(map[x], map[y]))
            return;
      std::vector<Elem> inv(n);
      for (int i = 0; i < n; ++i) inv[map[i]] = i;
      autos.push_back(inv);  // stored as new->old like minimizers
      return;
    }
    const int x = order[k];
    for (int y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (int z = 0; z < n && ok; ++z) {
        if (map[z] < 0 || z == x) continue;
        const Elem mz = L.m(x, z), jz = L.j(x, z);
        if (map[mz] >= 0 && map[mz] != L.m(y, map[z])) ok = false;
        if (ok && map[jz] >= 0 && map[jz] != L.j(y, map[z])) ok = false;
      }
      if (!ok) continue;
      used[y] = 1;
      map[x] = y;
      go(k + 1);
      used[y] = 0;
      map[x] = -1;
    }
  };
  go(0);
  return autos;
}

inline void canonicalize_lattice(WorkLattice& L) {
  const int n = L.n;
  if (n > kCanonicalFormSizeLimit) {
    L.canon_key = lattice_bytes_under(L, [&] {
      std::vector<Elem> id(n);
      std::iota(id.begin(), id.end(), 0);
      return id;
    }());
    L.minimizers = lattice_automorphisms(L);
    return;
  }
  std::vector<Elem> middles;
  for (int i = 0; i < n; ++i)
    if (i != L.bottom && i != L.top) middles.push_back(i);
  std::sort(middles.begin(), middles.end());
  std::string best;
  std::vector<std::vector<Elem>> best_perms;
  do {
    std::vector<Elem> inv;  // new -> old
    inv.push_back(L.bottom);
    inv.insert(inv.end(), middles.begin(), middles.end());
    if (n > 1) inv.push_back(L.top);
    std::string key = lattice_bytes_under(L, inv);
    if (best.empty() || key < best) {
      best = std::move(key);
      best_perms.clear();
      best_perms.push_back(std::move(inv));
    } else if (key == best) {
      best_perms.push_back(std::move(inv));
    }
  } while (std::next_permutation(middles.begin(), middles.end()));
  L.canon_key = std::move(best);
  L.minimizers = std::move(best_perms);
}

inline WorkLattice lattice_from_poset(const Poset& p) {
  const DownsetLattice ds = downsets_of(p);
  WorkLattice L;
  L.n = static_cast<int>(ds.masks.size());
  std::map<std::uint32_t, int> index;
  for (int i = 0; i < L.n; ++i) index[ds.masks[i]] = i;
  L.meet.resize(static_cast<std::size_t>(L.n) * L.n);
  L.join.resize(static_cast<std::size_t>(L.n) * L.n);
  for (int i = 0; i < L.n; ++i)
    for (int j = 0; j < L.n; ++j) {
      L.meet[static_cast<std::size_t>(i) * L.n + j] = index[ds.masks[i] & ds.masks[j]];
      L.join[static_cast<std::size_t>(i) * L.n + j] = index[ds.masks[i] | ds.masks[j]];
    }
  L.bottom = 0;
  L.top = L.n - 1;
  L.covers.universe_size = L.n;
  L.covers.labels = standard_labels(L.n);
  L.covers.covers = ds.covers;
  canonicalize_lattice(L);
  return L;
}

inline WorkLattice lattice_from_covers(const CoverRelation& cov) {
  WorkLattice L;
  L.n = cov.universe_size;
  LatticeTables t = tables_from_covers(cov);
  L.meet = std::move(t.meet);
  L.join = std::move(t.join);
  L.bottom = t.bottom;
  L.top = t.top;
  L.covers = cov;
  canonicalize_lattice(L);
  return L;
}

// All distributive lattices with at most max_size elements, one per
// isomorphism class, ordered by (size, canonical key).
inline std::vector<WorkLattice> work_lattices(int max_size) {
  if (max_size < 1 || max_size > kMaxEnumerationSize)
    throw std::invalid_argument("lattice size bound must be in 1.." +
                                std::to_string(kMaxEnumerationSize));
  std::vector<WorkLattice> out;
  for (const Poset& p : posets_with_downset_bound(max_size))
    out.push_back(lattice_from_poset(p));
  std::sort(out.begin(), out.end(), [](const WorkLattice& a, const WorkLattice& b) {
    return a.n != b.n ? a.n < b.n : a.canon_key < b.canon_key;
  });
  return out;
}

// Linear extension: a permutation pi (old -> position) with x <= y implying
// pi[x] <= pi[y]; positions are assigned bottom-up, ties by element index.
inline std::vector<int> linear_extension(const WorkLattice& L) {
  const int n = L.n;
  std::vector<int> pos(n, -1);
  std::vector<std::uint8_t> placed(n, 0);
  for (int next = 0; next < n; ++next) {
    for (int x = 0; x < n; ++x) {
      if (placed[x]) continue;
      bool ready = true;
      for (int y = 0; y < n && ready; ++y)
        if (!placed[y] && y != x && L.leq(y, x)) ready = false;
      if (ready) {
        pos[x] = next;
        placed[x] = 1;
        break;
      }
    }
  }
  return pos;
}

struct NodeBudget {
  std::atomic<std::uint64_t>* counter = nullptr;
  std::uint64_t cap = kDefaultNodeCap;

  void spend(std::uint64_t k = 1) const {
    if (!counter) return;
    if (counter->fetch_add(k, std::memory_order_relaxed) + k > cap)
      throw SearchSpaceExceeded(
          "search exceeded the node cap of " + std::to_string(cap) +
          " candidates (raise SHKIT_MAX_NODES to continue)");
  }
};

// All semi-Heyting arrow tables on a lattice, streamed to a sink in the
// lattice's original labelling.  Cells are filled row-major in a
// linear-extension relabelling; candidates come from the SH1 block
// {v : y /\ v = y /\ z} (diagonal pinned to 1 by SH3) and every SH2 instance
// is checked as soon as both of its entries exist.
template <typename Sink>
inline void stream_arrows(const WorkLattice& L, const NodeBudget& budget,
                          Sink&& sink) {
  const int n = L.n;
  const std::vector<int> pos = linear_extension(L);
  std::vector<int> elem_at(n);  // position -> old element
  for (int x = 0; x < n; ++x) elem_at[pos[x]] = x;
  // Tables in position space.
  std::vector<Elem> pmeet(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pmeet[static_cast<std::size_t>(i) * n + j] = pos[L.m(elem_at[i], elem_at[j])];
  auto pm = [&](int i, int j) {
    return pmeet[static_cast<std::size_t>(i) * n + j];
  };
  const Elem ptop = n - 1;

  // block[y][w]: ascending candidates v with y /\ v = w (w <= y).
  std::vector<std::vector<std::vector<Elem>>> block(n);
  for (int y = 0; y < n; ++y) {
    block[y].resize(n);
    for (int v = 0; v < n; ++v) block[y][pm(y, v)].push_back(v);
  }

  std::vector<Elem> tbl(static_cast<std::size_t>(n) * n, -1);
  std::vector<Elem> orig(static_cast<std::size_t>(n) * n);
  const std::vector<Elem> single_top{ptop};
  std::function<void(int)> fill = [&](int cell) {
    if (cell == n * n) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          orig[static_cast<std::size_t>(x) * n + y] =
              elem_at[tbl[static_cast<std::size_t>(pos[x]) * n + pos[y]]];
      sink(const_cast<const std::vector<Elem>&>(orig));
      return;
    }
    const int y = cell / n, z = cell % n;
    const std::vector<Elem>& cands = (y == z) ? single_top : block[y][pm(y, z)];
    for (Elem v : cands) {
      budget.spend();
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) {
        const int p = pm(x, y), q = pm(x, z);
        if (p == y && q == z) continue;
        const Elem u = tbl[static_cast<std::size_t>(p) * n + q];
        if (pm(x, v) != pm(x, u)) ok = false;
      }
      if (!ok) continue;
      tbl[static_cast<std::size_t>(y) * n + z] = v;
      fill(cell + 1);
      tbl[static_cast<std::size_t>(y) * n + z] = -1;
    }
  };
  fill(0);
}

inline std::vector<std::vector<Elem>> enumerate_arrows(const WorkLattice& L,
                                                       const NodeBudget& budget) {
  std::vector<std::vector<Elem>> results;
  stream_arrows(L, budget, [&](const std::vector<Elem>& t) { results.push_back(t); });
  std::sort(results.begin(), results.end());
  return results;
}

// All dually quasi-De Morgan negation tables on a lattice: 0' = 1, 1' = 0,
// (x /\ y)' = x' \/ y', x'' <= x checked incrementally bottom-up; the
// double-negation law (c) over joins is confirmed on complete tables.
inline std::vector<std::vector<Elem>> enumerate_negations(const WorkLattice& L,
                                                          const NodeBudget& budget) {
  const int n = L.n;
  const std::vector<int> pos = linear_extension(L);
  std::vector<int> elem_at(n);
  for (int x = 0; x < n; ++x) elem_at[pos[x]] = x;
  std::vector<Elem> pmeet(static_cast<std::size_t>(n) * n),
      pjoin(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pmeet[static_cast<std::size_t>(i) * n + j] = pos[L.m(elem_at[i], elem_at[j])];
      pjoin[static_cast<std::size_t>(i) * n + j] = pos[L.j(elem_at[i], elem_at[j])];
    }
  auto pm = [&](int i, int j) { return pmeet[static_cast<std::size_t>(i) * n + j]; };
  auto pj = [&](int i, int j) { return pjoin[static_cast<std::size_t>(i) * n + j]; };
  auto ple = [&](int i, int j) { return pm(i, j) == i; };
  const Elem pbot = 0, ptop = n - 1;

  std::vector<Elem> neg(n, -1);
  std::vector<std::vector<Elem>> results;
  std::function<void(int)> fill = [&](int y) {
    if (y == n) {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (neg[neg[pj(a, b)]] != pj(neg[neg[a]], neg[neg[b]])) return;
      std::vector<Elem> orig(n);
      for (int x = 0; x < n; ++x) orig[x] = elem_at[neg[pos[x]]];
      results.push_back(std::move(orig));
      return;
    }
    for (Elem v = 0; v < n; ++v) {
      if (y == pbot && v != ptop) continue;
      if (y == ptop && n > 1 && v != pbot) continue;
      budget.spend();
      bool ok = true;
      // (b) against every earlier element (their meets are earlier too).
      for (int x = 0; x < y && ok; ++x)
        if (neg[pm(x, y)] != pj(neg[x], v)) ok = false;
      // (d) where both negations are known.
      if (ok && v < y && !ple(neg[v], y)) ok = false;
      for (int x = 0; x < y && ok; ++x)
        if (neg[x] == y && !ple(v, x)) ok = false;
      if (!ok) continue;
      neg[y] = v;
      fill(y + 1);
      neg[y] = -1;
    }
  };
  fill(0);
  std::sort(results.begin(), results.end());
  return results;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations.

inline std::vector<CoverRelation> distributive_lattices(int max_size) {
  std::vector<CoverRelation> out;
  for (const auto& L : detail::work_lattices(max_size)) out.push_back(L.covers);
  return out;
}

inline std::vector<std::vector<Elem>> semiheyting_arrows(
    const CoverRelation& lattice, std::uint64_t node_cap = kDefaultNodeCap) {
  detail::WorkLattice L = detail::lattice_from_covers(lattice);
  std::atomic<std::uint64_t> counter{0};
  return detail::enumerate_arrows(L, {&counter, node_cap});
}

inline std::vector<std::vector<Elem>> dqd_negations(
    const CoverRelation& lattice, std::uint64_t node_cap = kDefaultNodeCap) {
  detail::WorkLattice L = detail::lattice_from_covers(lattice);
  std::atomic<std::uint64_t> counter{0};
  return detail::enumerate_negations(L, {&counter, node_cap});
}

// ---------------------------------------------------------------------------
// Isomorphism.

namespace detail {

inline std::vector<int> refine_algebra_classes(const FiniteAlgebra& a,
                                               const FiniteAlgebra& b) {
  const int n = a.size() + b.size();
  auto which = [&](int i) -> const FiniteAlgebra& { return i < a.size() ? a : b; };
  auto local = [&](int i) { return i < a.size() ? i : i - a.size(); };
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) {
    const FiniteAlgebra& s = which(i);
    const int x = local(i);
    cls[i] = (x == s.bottom() ? 1 : 0) + (x == s.top() ? 2 : 0);
  }
  for (int round = 0; round < n; ++round) {
    std::vector<std::pair<std::vector<int>, int>> sigs(n);
    for (int i = 0; i < n; ++i) {
      const FiniteAlgebra& s = which(i);
      const int x = local(i);
      const int base = i < a.size() ? 0 : a.size();
      std::vector<int> sig{cls[i], cls[base + s.neg(x)]};
      std::vector<std::array<int, 5>> rows;
      for (int y = 0; y < s.size(); ++y)
        rows.push_back({cls[base + y], cls[base + s.meet(x, y)],
                        cls[base + s.join(x, y)], cls[base + s.arrow(x, y)],
                        cls[base + s.arrow(y, x)]});
      std::sort(rows.begin(), rows.end());
      for (const auto& r : rows) sig.insert(sig.end(), r.begin(), r.end());
      sigs[i] = {std::move(sig), i};
    }
    auto sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> next(n);
    int id = -1;
    const std::vector<int>* prev = nullptr;
    for (const auto& [sig, i] : sorted) {
      if (!prev || sig != *prev) ++id;
      next[i] = id;
      prev = &sig;
    }
    if (next == cls) break;
    cls = std::move(next);
  }
  return cls;
}

}  // namespace detail

// True iff some bijection carries all four operations and both bounds of A
// onto B.
inline bool is_isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.size() != b.size()) return false;
  const int n = a.size();
  const std::vector<int> cls = detail::refine_algebra_classes(a, b);
  std::vector<int> ca(cls.begin(), cls.begin() + n);
  std::vector<int> cb(cls.begin() + n, cls.end());
  {
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
  }
  std::vector<int> map(n, -1);
  std::vector<std::uint8_t> used(n, 0);
  std::function<bool(int)> go = [&](int x) -> bool {
    if (x == n) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (map[a.meet(i, j)] != b.meet(map[i], map[j]) ||
              map[a.join(i, j)] != b.join(map[i], map[j]) ||
              map[a.arrow(i, j)] != b.arrow(map[i], map[j]))
            return false;
      for (int i = 0; i < n; ++i)
        if (map[a.neg(i)] != b.neg(map[i])) return false;
      return true;
    }
    for (int y = 0; y < n; ++y) {
      if (used[y] || cb[y] != ca[x]) continue;
      bool ok = true;
      for (int z = 0; z < x && ok; ++z) {
        const Elem mm = a.meet(x, z), jj = a.join(x, z), ar = a.arrow(x, z),
                   ra = a.arrow(z, x);
        if (map[mm] >= 0 && map[mm] != b.meet(y, map[z])) ok = false;
        if (ok && map[jj] >= 0 && map[jj] != b.join(y, map[z])) ok = false;
        if (ok && map[ar] >= 0 && map[ar] != b.arrow(y, map[z])) ok = false;
        if (ok && map[ra] >= 0 && map[ra] != b.arrow(map[z], y)) ok = false;
      }
      const Elem ng = a.neg(x);
      if (ok && map[ng] >= 0 && map[ng] != b.neg(y)) ok = false;
      if (!ok) continue;
      used[y] = 1;
      map[x] = y;
      if (go(x + 1)) return true;
      used[y] = 0;
      map[x] = -1;
    }
    return false;
  };
  return go(0);
}

// Lexicographically minimal meet||join||arrow||neg byte string over all
// bijections sending bottom to 0 and top to n-1.  Equal strings characterize
// isomorphic algebras.  Factorial in n - 2; supported for n <= 10.
inline std::string canonical_form(const FiniteAlgebra& a) {
  const int n = a.size();
  if (n > detail::kCanonicalFormSizeLimit)
    throw std::invalid_argument("canonical_form supports sizes up to " +
                                std::to_string(detail::kCanonicalFormSizeLimit));
  std::vector<Elem> middles;
  for (int i = 0; i < n; ++i)
    if (i != a.bottom() && i != a.top()) middles.push_back(i);
  std::sort(middles.begin(), middles.end());
  std::string best;
  do {
    std::vector<Elem> inv;  // new -> old
    inv.push_back(a.bottom());
    inv.insert(inv.end(), middles.begin(), middles.end());
    if (n > 1) inv.push_back(a.top());
    std::vector<Elem> perm(n);
    for (int i = 0; i < n; ++i) perm[inv[i]] = i;
    std::string key;
    key.reserve(3 * n * n + n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        key += static_cast<char>(perm[a.meet(inv[i], inv[j])]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        key += static_cast<char>(perm[a.join(inv[i], inv[j])]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        key += static_cast<char>(perm[a.arrow(inv[i], inv[j])]);
    for (int i = 0; i < n; ++i) key += static_cast<char>(perm[a.neg(inv[i])]);
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(middles.begin(), middles.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Corpus enumeration and constraint search.

struct EnumerationOptions {
  int max_lattice_size = 8;
  std::uint64_t node_cap = kDefaultNodeCap;
  int threads = 1;
};

namespace detail {

// arrow||neg bytes under a fixed relabelling (inv_perm[new] = old).
inline std::string tables_bytes_under(int n, const std::vector<Elem>& arrow,
                                      const std::vector<Elem>& neg,
                                      const std::vector<Elem>& inv_perm) {
  std::vector<Elem> perm(n);
  for (int i = 0; i < n; ++i) perm[inv_perm[i]] = i;
  std::string out;
  out.reserve(n * n + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out += static_cast<char>(
          perm[arrow[static_cast<std::size_t>(inv_perm[i]) * n + inv_perm[j]]]);
  for (int i = 0; i < n; ++i)
    out += static_cast<char>(perm[neg[static_cast<std::size_t>(inv_perm[i])]]);
  return out;
}

// Automorphisms of the lattice in its own labelling, derived from the
// minimizer coset: if s0, s are two minimizers then s0^-1 . s is an
// automorphism, and all arise this way.  Identity excluded.
struct AutPerm {
  std::vector<Elem> perm;  // old -> new
  std::vector<Elem> inv;   // new -> old
};

inline std::vector<AutPerm> nontrivial_automorphisms(const WorkLattice& L) {
  const int n = L.n;
  std::vector<AutPerm> out;
  const std::vector<Elem>& inv0 = L.minimizers.front();
  std::vector<Elem> perm0(n);
  for (int i = 0; i < n; ++i) perm0[inv0[i]] = i;
  for (const auto& invk : L.minimizers) {
    AutPerm a;
    a.inv.resize(n);
    a.perm.resize(n);
    for (int c = 0; c < n; ++c) a.inv[c] = invk[perm0[c]];
    bool identity = true;
    for (int c = 0; c < n; ++c) {
      a.perm[a.inv[c]] = c;
      if (a.inv[c] != c) identity = false;
    }
    if (!identity) out.push_back(std::move(a));
  }
  return out;
}

// True iff (arrow, neg) is the lexicographically least member of its orbit
// under the lattice automorphisms; exactly one member per isomorphism class
// qualifies.
inline bool orbit_minimal(const WorkLattice& L,
                          const std::vector<AutPerm>& auts,
                          const std::vector<Elem>& arrow,
                          const std::vector<Elem>& neg) {
  const int n = L.n;
  for (const AutPerm& a : auts) {
    int cmp = 0;
    for (int i = 0; i < n && cmp == 0; ++i)
      for (int j = 0; j < n && cmp == 0; ++j) {
        const Elem lhs =
            a.perm[arrow[static_cast<std::size_t>(a.inv[i]) * n + a.inv[j]]];
        const Elem rhs = arrow[static_cast<std::size_t>(i) * n + j];
        if (lhs != rhs) cmp = lhs < rhs ? -1 : 1;
      }
    for (int i = 0; i < n && cmp == 0; ++i) {
      const Elem lhs = a.perm[neg[static_cast<std::size_t>(a.inv[i])]];
      const Elem rhs = neg[static_cast<std::size_t>(i)];
      if (lhs != rhs) cmp = lhs < rhs ? -1 : 1;
    }
    if (cmp < 0) return false;
  }
  return true;
}

// Lattice tables relabelled by the first minimizer (the canonical labelling
// for n <= kCanonicalFormSizeLimit).
struct CanonicalLattice {
  std::vector<Elem> meet, join;
  std::vector<Elem> inv;  // new -> old
};

inline CanonicalLattice canonical_lattice_tables(const WorkLattice& L) {
  const int n = L.n;
  CanonicalLattice out;
  out.inv = L.minimizers.front();
  std::vector<Elem> perm(n);
  for (int i = 0; i < n; ++i) perm[out.inv[i]] = i;
  out.meet.resize(static_cast<std::size_t>(n) * n);
  out.join.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.meet[static_cast<std::size_t>(i) * n + j] = perm[L.m(out.inv[i], out.inv[j])];
      out.join[static_cast<std::size_t>(i) * n + j] = perm[L.j(out.inv[i], out.inv[j])];
    }
  return out;
}

// An orbit-minimal pair turned into the canonical representative algebra.
inline FiniteAlgebra canonical_representative(const WorkLattice& L,
                                              const CanonicalLattice& cl,
                                              const std::vector<Elem>& arrow,
                                              const std::vector<Elem>& neg) {
  const int n = L.n;
  std::string best;
  for (const auto& inv : L.minimizers) {
    std::string key = tables_bytes_under(n, arrow, neg, inv);
    if (best.empty() || key < best) best = std::move(key);
  }
  std::vector<Elem> can_arrow(static_cast<std::size_t>(n) * n);
  std::vector<Elem> can_neg(n);
  for (std::size_t i = 0; i < can_arrow.size(); ++i) can_arrow[i] = best[i];
  for (int i = 0; i < n; ++i)
    can_neg[i] = best[static_cast<std::size_t>(n) * n + i];
  return FiniteAlgebra::unchecked(standard_labels(n), cl.meet, cl.join,
                                  std::move(can_arrow), std::move(can_neg), 0,
                                  n == 1 ? 0 : n - 1);
}

// The pseudocomplement column is determined by the lattice alone: x* is the
// greatest element disjoint from x, which every semi-Heyting arrow realizes
// as x -> 0.
inline std::vector<Elem> pseudocomplement_column(const WorkLattice& L) {
  std::vector<Elem> star(L.n);
  for (int x = 0; x < L.n; ++x) {
    Elem s = L.bottom;
    for (int z = 0; z < L.n; ++z)
      if (L.m(x, z) == L.bottom) s = L.j(s, z);
    star[x] = s;
  }
  return star;
}

// The relative-pseudocomplement arrow r(x, y) = max{z : x /\ z <= y}; every
// finite distributive lattice carries it, so every lattice in the corpus
// supports at least this Heyting structure.
inline std::vector<Elem> heyting_arrow(const WorkLattice& L) {
  const int n = L.n;
  std::vector<Elem> arrow(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Elem r = L.bottom;
      for (int z = 0; z < n; ++z)
        if (L.leq(L.m(x, z), y)) r = L.j(r, z);
      arrow[static_cast<std::size_t>(x) * n + y] = r;
    }
  return arrow;
}

}  // namespace detail

// Streams every dually quasi-De Morgan semi-Heyting algebra over distributive
// lattices of size <= max_lattice_size, one representative per isomorphism
// class, all in canonical labelling.  The order is deterministic (lattices by
// (size, canonical key), algebras by generation order within a lattice) and
// independent of the thread count.
inline void enumerate_corpus(
    const EnumerationOptions& opt,
    const std::function<void(const FiniteAlgebra&)>& sink) {
  std::atomic<std::uint64_t> node_counter{0};
  const detail::NodeBudget budget{&node_counter, opt.node_cap};
  for (const detail::WorkLattice& L : detail::work_lattices(opt.max_lattice_size)) {
    const auto negs = detail::enumerate_negations(L, budget);
    if (negs.empty()) continue;
    const auto auts = detail::nontrivial_automorphisms(L);
    const auto cl = detail::canonical_lattice_tables(L);

    // Arrows are streamed in chunks: workers mark the orbit-minimal
    // (arrow, negation) pairs, the main thread emits them in order.
    std::vector<std::vector<Elem>> chunk;
    const std::size_t chunk_target = 2048;
    auto flush = [&] {
      if (chunk.empty()) return;
      const int nw = std::max(1, std::min<int>(opt.threads,
                                               static_cast<int>(chunk.size())));
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> hits(nw);
      auto scan = [&](int w, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
          for (std::size_t k = 0; k < negs.size(); ++k)
            if (detail::orbit_minimal(L, auts, chunk[i], negs[k]))
              hits[w].emplace_back(i, k);
      };
      if (nw == 1) {
        scan(0, 0, chunk.size());
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nw; ++w)
          pool.emplace_back(scan, w, chunk.size() * w / nw,
                            chunk.size() * (w + 1) / nw);
        for (auto& t : pool) t.join();
      }
      for (int w = 0; w < nw; ++w)
        for (const auto& [i, k] : hits[w])
          sink(detail::canonical_representative(L, cl, chunk[i], negs[k]));
      chunk.clear();
    };
    detail::stream_arrows(L, budget, [&](const std::vector<Elem>& arrow) {
      chunk.push_back(arrow);
      if (chunk.size() >= chunk_target) flush();
    });
    flush();
  }
}

// Streams one witness algebra per (lattice, negation) family: the Heyting
// arrow on the lattice with that negation.  Identities whose arrows appear
// only as pseudocomplements hold for the witness iff they hold for every
// semi-Heyting arrow over the same lattice and negation, so checks of such
// identities against these witnesses decide them for the whole corpus
// without enumerating arrows.
inline void enumerate_star_families(
    const EnumerationOptions& opt,
    const std::function<void(const FiniteAlgebra&)>& sink) {
  std::atomic<std::uint64_t> node_counter{0};
  const detail::NodeBudget budget{&node_counter, opt.node_cap};
  for (const detail::WorkLattice& L : detail::work_lattices(opt.max_lattice_size)) {
    const std::vector<Elem> hey = detail::heyting_arrow(L);
    for (const auto& neg : detail::enumerate_negations(L, budget))
      sink(FiniteAlgebra::unchecked(L.covers.labels, L.meet, L.join, hey, neg,
                                    L.bottom, L.top));
  }
}

// Constraint-driven search: all identities in `satisfy` must pass and all in
// `falsify` must fail.
struct SearchSpec {
  std::vector<Identity> satisfy;
  std::vector<Identity> falsify;
  int max_lattice_size = 8;
  std::size_t max_results = SIZE_MAX;
};

// Matching algebras in deterministic order, deduplicated up to isomorphism
// and capped at max_results (the cap keeps the earliest matches; the final
// list is sorted by size and canonical tables).
//
// When every constraint lives in the pseudocomplement fragment, whole
// lattices are skipped unless one of their negations matches, which is what
// makes searches over larger bounds practical; arrows are only enumerated on
// the surviving lattices.
inline std::vector<FiniteAlgebra> search(const SearchSpec& spec,
                                         const EnumerationOptions& opt_in = {}) {
  for (const auto& s : spec.satisfy)
    for (const auto& f : spec.falsify)
      if (s.name == f.name)
        throw std::invalid_argument("identity \"" + s.name +
                                    "\" appears in both satisfy and falsify");
  EnumerationOptions opt = opt_in;
  opt.max_lattice_size = spec.max_lattice_size;

  bool star_only = true;
  for (const auto& id : spec.satisfy) star_only = star_only && id.star_fragment();
  for (const auto& id : spec.falsify) star_only = star_only && id.star_fragment();

  auto matches = [&](const FiniteAlgebra& a) {
    for (const auto& id : spec.satisfy)
      if (!check(a, id).pass) return false;
    for (const auto& id : spec.falsify)
      if (check(a, id).pass) return false;
    return true;
  };

  std::vector<FiniteAlgebra> out;
  auto take = [&](const FiniteAlgebra& a) {
    if (out.size() < spec.max_results) out.push_back(a);
  };

  if (!star_only) {
    enumerate_corpus(opt, [&](const FiniteAlgebra& a) {
      if (out.size() >= spec.max_results || !matches(a)) return;
      take(a);
    });
  } else {
    std::atomic<std::uint64_t> node_counter{0};
    const detail::NodeBudget budget{&node_counter, opt.node_cap};
    for (const detail::WorkLattice& L :
         detail::work_lattices(opt.max_lattice_size)) {
      const auto all_negs = detail::enumerate_negations(L, budget);
      const std::vector<Elem> hey = detail::heyting_arrow(L);
      std::vector<std::vector<Elem>> negs;  // negations whose family matches
      for (const auto& neg : all_negs)
        if (matches(FiniteAlgebra::unchecked(L.covers.labels, L.meet, L.join,
                                             hey, neg, L.bottom, L.top)))
          negs.push_back(neg);
      if (negs.empty()) continue;
      const auto auts = detail::nontrivial_automorphisms(L);
      const auto cl = detail::canonical_lattice_tables(L);
      detail::stream_arrows(L, budget, [&](const std::vector<Elem>& arrow) {
        for (const auto& neg : negs)
          if (detail::orbit_minimal(L, auts, arrow, neg))
            take(detail::canonical_representative(L, cl, arrow, neg));
      });
    }
  }

  std::sort(out.begin(), out.end(),
            [](const FiniteAlgebra& a, const FiniteAlgebra& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              if (a.meet_table() != b.meet_table())
                return a.meet_table() < b.meet_table();
              if (a.join_table() != b.join_table())
                return a.join_table() < b.join_table();
              if (a.arrow_table() != b.arrow_table())
                return a.arrow_table() < b.arrow_table();
              return a.neg_table() < b.neg_table();
            });
  return out;
}

}  // namespace shkit
