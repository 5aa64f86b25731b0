#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "shkit/corpus.hpp"
#include "shkit/enumerate.hpp"
#include "shkit/json_io.hpp"

using namespace shkit;

namespace {

CoverRelation chain(int n) {
  CoverRelation c;
  c.universe_size = n;
  for (int i = 0; i < n; ++i) c.labels.push_back("e" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) c.covers.emplace_back(i, i + 1);
  return c;
}

CoverRelation lattice_of(const FiniteAlgebra& a) {
  CoverRelation cov;
  cov.universe_size = a.size();
  cov.labels = a.labels();
  cov.covers = cover_pairs(a);
  return cov;
}

// Brute-force oracle: every n^(n*n) arrow table, filtered by a direct
// reading of SH1 - SH3.  Tractable only for tiny lattices; kept independent
// of the pruned backtracking path it cross-checks.
std::set<std::vector<Elem>> brute_force_arrows(const CoverRelation& cov) {
  const auto t = detail::tables_from_covers(cov);
  const int n = t.n;
  auto meet = [&](Elem x, Elem y) { return t.meet[x * n + y]; };
  std::set<std::vector<Elem>> good;
  std::vector<Elem> tbl(n * n, 0);
  const std::uint64_t total = [&] {
    std::uint64_t v = 1;
    for (int i = 0; i < n * n; ++i) v *= n;
    return v;
  }();
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n * n; ++i) {
      tbl[i] = static_cast<Elem>(c % n);
      c /= n;
    }
    auto arrow = [&](Elem x, Elem y) { return tbl[x * n + y]; };
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = arrow(x, x) == t.top;
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y)
        ok = meet(x, arrow(x, y)) == meet(x, y);
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y)
        for (Elem z = 0; z < n && ok; ++z)
          ok = meet(x, arrow(y, z)) == meet(x, arrow(meet(x, y), meet(x, z)));
    if (ok) good.insert(tbl);
  }
  return good;
}

// Brute-force oracle for negations: all n^n unary tables against a direct
// reading of the four negation axioms.
std::set<std::vector<Elem>> brute_force_negations(const CoverRelation& cov) {
  const auto t = detail::tables_from_covers(cov);
  const int n = t.n;
  auto meet = [&](Elem x, Elem y) { return t.meet[x * n + y]; };
  auto join = [&](Elem x, Elem y) { return t.join[x * n + y]; };
  auto leq = [&](Elem x, Elem y) { return meet(x, y) == x; };
  std::set<std::vector<Elem>> good;
  std::vector<Elem> neg(n, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= n;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      neg[i] = static_cast<Elem>(c % n);
      c /= n;
    }
    bool ok = neg[t.bottom] == t.top && neg[t.top] == t.bottom;
    for (Elem x = 0; x < n && ok; ++x) ok = leq(neg[neg[x]], x);
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y) {
        ok = neg[meet(x, y)] == join(neg[x], neg[y]);
        if (ok)
          ok = neg[neg[join(x, y)]] == join(neg[neg[x]], neg[neg[y]]);
      }
    if (ok) good.insert(neg);
  }
  return good;
}

}  // namespace

TEST_CASE("distributive lattice counts match the known sequence") {
  const auto lattices = distributive_lattices(8);
  std::map<int, int> by_size;
  for (const auto& l : lattices) by_size[l.universe_size]++;
  const std::map<int, int> expected = {{1, 1}, {2, 1}, {3, 1}, {4, 2},
                                       {5, 3}, {6, 5}, {7, 8}, {8, 15}};
  CHECK(by_size == expected);
}

TEST_CASE("small bounds include the expected lattices") {
  CHECK(distributive_lattices(2).size() == 2);

  // The four-element square: downsets of a two-element antichain.
  bool square = false;
  for (const auto& l : distributive_lattices(4)) {
    if (l.universe_size != 4) continue;
    const auto t = detail::tables_from_covers(l);
    int maximal_below_top = 0;
    for (int x = 0; x < 4; ++x)
      if (x != t.top && t.join[x * 4 + t.top] == t.top &&
          [&] {
            for (int y = 0; y < 4; ++y)
              if (y != x && y != t.top && t.meet[x * 4 + y] == x) return false;
            return true;
          }())
        ++maximal_below_top;
    if (maximal_below_top == 2) square = true;
  }
  CHECK(square);

  CHECK_THROWS_AS(distributive_lattices(kMaxEnumerationSize + 1),
                  std::invalid_argument);
}

TEST_CASE("the figure 1 lattice appears at size seven") {
  const FiniteAlgebra fig1 = builtin("fig1");
  const auto fig1_lattice = detail::lattice_from_covers(lattice_of(fig1));
  bool found = false;
  for (const auto& l : distributive_lattices(7)) {
    if (l.universe_size != 7) continue;
    if (detail::lattice_from_covers(l).canon_key == fig1_lattice.canon_key)
      found = true;
  }
  CHECK(found);
}

TEST_CASE("two-chain arrows and negations are exactly the known ones") {
  const auto arrows = semiheyting_arrows(chain(2));
  REQUIRE(arrows.size() == 2);
  CHECK(arrows[0] == std::vector<Elem>{1, 0, 0, 1});  // 0 -> 1 = 0
  CHECK(arrows[1] == std::vector<Elem>{1, 1, 0, 1});  // Heyting
  const auto negs = dqd_negations(chain(2));
  REQUIRE(negs.size() == 1);
  CHECK(negs[0] == std::vector<Elem>{1, 0});
}

TEST_CASE("the one-element lattice carries exactly one arrow") {
  CHECK(semiheyting_arrows(chain(1)).size() == 1);
  CHECK(dqd_negations(chain(1)).size() == 1);
}

TEST_CASE("pruned enumeration equals brute force on tiny chains") {
  for (int n : {2, 3}) {
    const auto pruned = semiheyting_arrows(chain(n));
    const auto brute = brute_force_arrows(chain(n));
    CHECK(std::set<std::vector<Elem>>(pruned.begin(), pruned.end()) == brute);
  }
  for (int n : {2, 3, 4}) {
    const auto pruned = dqd_negations(chain(n));
    const auto brute = brute_force_negations(chain(n));
    CHECK(std::set<std::vector<Elem>>(pruned.begin(), pruned.end()) == brute);
  }
}

TEST_CASE("pruned negation enumeration equals brute force on the square") {
  // The arrow oracle stops at the 3-chain: n^(n*n) tables on the square is
  // already 4^16.  Negations stay cheap at n^n.
  CoverRelation square;
  square.universe_size = 4;
  square.labels = {"0", "a", "b", "1"};
  square.covers = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  const auto negs = dqd_negations(square);
  const auto bnegs = brute_force_negations(square);
  CHECK(std::set<std::vector<Elem>>(negs.begin(), negs.end()) == bnegs);
}

TEST_CASE("figure tables are reachable by the enumerators") {
  const FiniteAlgebra fig2 = builtin("fig2");
  const auto arrows = semiheyting_arrows(lattice_of(fig2));
  CHECK(std::find(arrows.begin(), arrows.end(), fig2.arrow_table()) !=
        arrows.end());
  const auto negs2 = dqd_negations(lattice_of(fig2));
  CHECK(std::find(negs2.begin(), negs2.end(), fig2.neg_table()) != negs2.end());

  const FiniteAlgebra fig1 = builtin("fig1");
  const auto negs1 = dqd_negations(lattice_of(fig1));
  CHECK(std::find(negs1.begin(), negs1.end(), fig1.neg_table()) != negs1.end());
}

TEST_CASE("is_isomorphic accepts relabellings and rejects different tables") {
  const FiniteAlgebra fig1 = builtin("fig1");
  // Relabel by rotating the five middle elements.
  const int n = fig1.size();
  std::vector<Elem> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<int> middles;
  for (int i = 0; i < n; ++i)
    if (i != fig1.bottom() && i != fig1.top()) middles.push_back(i);
  for (std::size_t k = 0; k < middles.size(); ++k)
    perm[middles[k]] = middles[(k + 1) % middles.size()];
  std::vector<std::string> labels(n);
  std::vector<Elem> meet(n * n), join(n * n), arrow(n * n), neg(n);
  for (int i = 0; i < n; ++i) {
    labels[perm[i]] = fig1.label(i);
    neg[perm[i]] = perm[fig1.neg(i)];
    for (int j = 0; j < n; ++j) {
      meet[perm[i] * n + perm[j]] = perm[fig1.meet(i, j)];
      join[perm[i] * n + perm[j]] = perm[fig1.join(i, j)];
      arrow[perm[i] * n + perm[j]] = perm[fig1.arrow(i, j)];
    }
  }
  const FiniteAlgebra shuffled = FiniteAlgebra::unchecked(
      labels, meet, join, arrow, neg, perm[fig1.bottom()], perm[fig1.top()]);
  CHECK(shuffled.validate().ok());
  CHECK(is_isomorphic(fig1, shuffled));

  CHECK_FALSE(is_isomorphic(builtin("fig2"), builtin("fig3")));

  const auto arrows2 = semiheyting_arrows(chain(2));
  const auto negs2 = dqd_negations(chain(2));
  CoverRelation two = chain(2);
  const FiniteAlgebra heyting =
      FiniteAlgebra::from_covers(two, arrows2[1], negs2[0]);
  const FiniteAlgebra other =
      FiniteAlgebra::from_covers(two, arrows2[0], negs2[0]);
  CHECK_FALSE(is_isomorphic(heyting, other));
}

TEST_CASE("canonical forms coincide exactly on isomorphic algebras") {
  std::vector<FiniteAlgebra> pool;
  EnumerationOptions opt;
  opt.max_lattice_size = 4;
  enumerate_corpus(opt, [&](const FiniteAlgebra& a) { pool.push_back(a); });
  REQUIRE(pool.size() >= 10);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < std::min(pool.size(), i + 25); ++j) {
      const bool same_form = canonical_form(pool[i]) == canonical_form(pool[j]);
      CHECK(same_form == is_isomorphic(pool[i], pool[j]));
    }
}

TEST_CASE("canonical forms are invariant under relabelling up to size 6") {
  for (const char* name : {"fig2", "fig3"}) {
    const FiniteAlgebra a = builtin(name);
    const int n = a.size();
    // Swap two middle elements.
    std::vector<Elem> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<int> middles;
    for (int i = 0; i < n; ++i)
      if (i != a.bottom() && i != a.top()) middles.push_back(i);
    std::swap(perm[middles[0]], perm[middles[1]]);
    std::vector<std::string> labels(n);
    std::vector<Elem> meet(n * n), join(n * n), arrow(n * n), neg(n);
    for (int i = 0; i < n; ++i) {
      labels[perm[i]] = a.label(i);
      neg[perm[i]] = perm[a.neg(i)];
      for (int j = 0; j < n; ++j) {
        meet[perm[i] * n + perm[j]] = perm[a.meet(i, j)];
        join[perm[i] * n + perm[j]] = perm[a.join(i, j)];
        arrow[perm[i] * n + perm[j]] = perm[a.arrow(i, j)];
      }
    }
    const FiniteAlgebra b = FiniteAlgebra::unchecked(
        labels, meet, join, arrow, neg, perm[a.bottom()], perm[a.top()]);
    INFO(name);
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(is_isomorphic(a, b));
  }
  CHECK(canonical_form(builtin("fig2")) != canonical_form(builtin("fig3")));
}

TEST_CASE("enumerated corpus algebras validate and are pairwise distinct") {
  EnumerationOptions opt;
  opt.max_lattice_size = 4;
  std::set<std::string> forms;
  std::size_t count = 0;
  enumerate_corpus(opt, [&](const FiniteAlgebra& a) {
    ++count;
    CHECK(a.validate().ok());
    forms.insert(canonical_form(a));
  });
  CHECK(count == forms.size());
  CHECK(count > 0);
}

TEST_CASE("corpus enumeration is independent of the worker count") {
  auto collect = [](int threads) {
    EnumerationOptions opt;
    opt.max_lattice_size = 5;
    opt.threads = threads;
    std::vector<std::string> forms;
    enumerate_corpus(opt, [&](const FiniteAlgebra& a) {
      forms.push_back(canonical_form(a));
    });
    return forms;
  };
  const auto one = collect(1);
  CHECK(one == collect(3));
  CHECK(one.size() > 1000);
}

TEST_CASE("star family witnesses validate and cover every lattice") {
  EnumerationOptions opt;
  opt.max_lattice_size = 5;
  std::set<int> sizes;
  enumerate_star_families(opt, [&](const FiniteAlgebra& a) {
    CHECK(a.validate().ok());
    CHECK(check(a, *find_identity("H")).pass);  // witnesses carry the Heyting arrow
    sizes.insert(a.size());
  });
  CHECK(sizes == std::set<int>{1, 2, 3, 4, 5});
}

TEST_CASE("search finds the separating examples and respects emptiness") {
  SearchSpec sep;
  sep.satisfy = {*find_identity("JDM"), level_identity(1)};
  sep.falsify = {*find_identity("St")};
  sep.max_lattice_size = 5;
  const auto results = search(sep);
  REQUIRE_FALSE(results.empty());
  bool has_fig2 = false;
  for (const auto& a : results) {
    CHECK(check(a, sep.satisfy[0]).pass);
    CHECK(check(a, sep.satisfy[1]).pass);
    CHECK_FALSE(check(a, sep.falsify[0]).pass);
    if (is_isomorphic(a, builtin("fig2"))) has_fig2 = true;
  }
  CHECK(has_fig2);

  SearchSpec empty_spec;
  empty_spec.satisfy = {*find_identity("DM"), level_identity(1)};
  empty_spec.falsify = {*find_identity("St")};
  empty_spec.max_lattice_size = 6;
  CHECK(search(empty_spec).empty());
}

TEST_CASE("family-filtered search equals filtering the full corpus") {
  // The fast path decides pseudocomplement-fragment identities once per
  // (lattice, negation) family; cross-check it against a plain filter over
  // the exhaustively enumerated corpus at a size where both are feasible.
  SearchSpec spec;
  spec.satisfy = {*find_identity("JDM"), level_identity(1)};
  spec.falsify = {*find_identity("St")};
  spec.max_lattice_size = 5;
  const auto fast = search(spec);

  std::set<std::string> slow_forms;
  EnumerationOptions opt;
  opt.max_lattice_size = 5;
  opt.node_cap = 1'000'000;
  enumerate_corpus(opt, [&](const FiniteAlgebra& a) {
    for (const auto& id : spec.satisfy)
      if (!check(a, id).pass) return;
    for (const auto& id : spec.falsify)
      if (check(a, id).pass) return;
    slow_forms.insert(canonical_form(a));
  });

  std::set<std::string> fast_forms;
  for (const auto& a : fast) fast_forms.insert(canonical_form(a));
  CHECK(fast_forms == slow_forms);
  CHECK(fast.size() == fast_forms.size());
}

TEST_CASE("search rejects overlapping constraint lists and honours caps") {
  SearchSpec bad;
  bad.satisfy = {*find_identity("St")};
  bad.falsify = {*find_identity("St")};
  CHECK_THROWS_AS(search(bad), std::invalid_argument);

  SearchSpec capped;
  capped.max_lattice_size = 4;
  capped.max_results = 5;
  CHECK(search(capped).size() == 5);

  EnumerationOptions tiny;
  tiny.max_lattice_size = 5;
  tiny.node_cap = 50;
  SearchSpec spec;
  spec.max_lattice_size = 5;
  spec.satisfy = {*find_identity("H")};  // forces the full enumeration path
  CHECK_THROWS_AS(search(spec, tiny), SearchSpaceExceeded);
}

TEST_CASE("semiheyting_arrows reports cap exhaustion") {
  CHECK_THROWS_AS(semiheyting_arrows(chain(5), 100), SearchSpaceExceeded);
}
