#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shkit {

// Elements of a finite algebra are dense indices 0..n-1; display names live
// in a separate label list.
using Elem = int;

constexpr int kMaxUniverseSize = 64;

struct Witness {
  // Variable names with the element indices assigned to them, e.g.
  // {("x", 3), ("y", 0)}.  Kept sorted by variable name.
  std::vector<std::pair<std::string, Elem>> binding;

  std::string to_string(const std::vector<std::string>& labels) const {
    std::string out;
    for (const auto& [var, el] : binding) {
      if (!out.empty()) out += ", ";
      out += var + "=" + labels.at(static_cast<std::size_t>(el));
    }
    return out;
  }
};

struct ValidationIssue {
  std::string axiom;  // e.g. "SH2", "distributive", "0' = 1"
  Witness witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool failed(const std::string& axiom) const {
    for (const auto& i : issues)
      if (i.axiom == axiom) return true;
    return false;
  }
};

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotALattice : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class NotDistributive : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class AxiomViolation : public AlgebraError {
 public:
  AxiomViolation(std::string axiom, std::string detail)
      : AlgebraError("axiom " + axiom + " fails: " + detail),
        axiom_(std::move(axiom)) {}

  const std::string& axiom() const { return axiom_; }

 private:
  std::string axiom_;
};

// Input form for lattices given as Hasse diagrams: a list of covering pairs
// (lower, upper) over labelled elements.
struct CoverRelation {
  int universe_size = 0;
  std::vector<std::string> labels;
  std::vector<std::pair<Elem, Elem>> covers;
};

namespace detail {

// Reflexive-transitive closure of a cover list.  Throws NotALattice on
// cycles or out-of-range indices.
inline std::vector<std::uint8_t> cover_closure(const CoverRelation& cov) {
  const int n = cov.universe_size;
  if (n <= 0) throw NotALattice("empty universe");
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i) * n + i] = 1;
  for (const auto& [lo, hi] : cov.covers) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n || lo == hi)
      throw NotALattice("cover pair out of range");
    leq[static_cast<std::size_t>(lo) * n + hi] = 1;
  }
  // Warshall closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[static_cast<std::size_t>(i) * n + k])
        for (int j = 0; j < n; ++j)
          if (leq[static_cast<std::size_t>(k) * n + j])
            leq[static_cast<std::size_t>(i) * n + j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (leq[static_cast<std::size_t>(i) * n + j] &&
          leq[static_cast<std::size_t>(j) * n + i])
        throw NotALattice("cover relation is cyclic");
  return leq;
}

// Meet/join tables plus bounds computed from an order matrix.  Throws
// NotALattice when some pair lacks a unique glb/lub.
struct LatticeTables {
  int n = 0;
  std::vector<Elem> meet, join;
  Elem bottom = 0, top = 0;
};

inline LatticeTables tables_from_order(const std::vector<std::uint8_t>& leq,
                                       int n,
                                       const std::vector<std::string>& labels) {
  LatticeTables t;
  t.n = n;
  t.meet.assign(static_cast<std::size_t>(n) * n, -1);
  t.join.assign(static_cast<std::size_t>(n) * n, -1);
  auto le = [&](int x, int y) {
    return leq[static_cast<std::size_t>(x) * n + y] != 0;
  };
  auto name = [&](int x) {
    return x < static_cast<int>(labels.size()) ? labels[x]
                                               : std::to_string(x);
  };
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      Elem glb = -1, lub = -1;
      for (int z = 0; z < n; ++z) {
        if (le(z, x) && le(z, y) && (glb < 0 || le(glb, z))) glb = z;
        if (le(x, z) && le(y, z) && (lub < 0 || le(z, lub))) lub = z;
      }
      // The fold above only compares successive candidates; re-check the
      // winner against every common bound.
      for (int z = 0; z < n; ++z) {
        if (le(z, x) && le(z, y) && (glb < 0 || !le(z, glb))) glb = -2;
        if (le(x, z) && le(y, z) && (lub < 0 || !le(lub, z))) lub = -2;
      }
      if (glb < 0)
        throw NotALattice("pair {" + name(x) + ", " + name(y) +
                          "} has no unique greatest lower bound");
      if (lub < 0)
        throw NotALattice("pair {" + name(x) + ", " + name(y) +
                          "} has no unique least upper bound");
      t.meet[static_cast<std::size_t>(x) * n + y] = glb;
      t.meet[static_cast<std::size_t>(y) * n + x] = glb;
      t.join[static_cast<std::size_t>(x) * n + y] = lub;
      t.join[static_cast<std::size_t>(y) * n + x] = lub;
    }
  }
  Elem bot = 0, top = 0;
  for (int x = 1; x < n; ++x) {
    bot = t.meet[static_cast<std::size_t>(bot) * n + x];
    top = t.join[static_cast<std::size_t>(top) * n + x];
  }
  t.bottom = bot;
  t.top = top;
  return t;
}

inline LatticeTables tables_from_covers(const CoverRelation& cov) {
  return tables_from_order(cover_closure(cov), cov.universe_size, cov.labels);
}

}  // namespace detail

// A finite bounded distributive lattice with -> and ' given by operation
// tables.  Construction through from_covers/from_tables validates all
// structural axioms; unchecked() skips that (for tests and enumeration
// internals).  Immutable after construction.
class FiniteAlgebra {
 public:
  static FiniteAlgebra from_covers(const CoverRelation& covers,
                                   std::vector<Elem> arrow_table,
                                   std::vector<Elem> neg_table) {
    FiniteAlgebra a;
    a.n_ = covers.universe_size;
    a.labels_ = covers.labels;
    check_labels(a.n_, a.labels_);
    detail::LatticeTables t = detail::tables_from_covers(covers);
    a.meet_ = std::move(t.meet);
    a.join_ = std::move(t.join);
    a.bottom_ = t.bottom;
    a.top_ = t.top;
    a.arrow_ = std::move(arrow_table);
    a.neg_ = std::move(neg_table);
    a.throw_if_invalid();
    return a;
  }

  static FiniteAlgebra from_tables(std::vector<std::string> labels,
                                   std::vector<Elem> meet_table,
                                   std::vector<Elem> join_table,
                                   std::vector<Elem> arrow_table,
                                   std::vector<Elem> neg_table, Elem bottom,
                                   Elem top) {
    FiniteAlgebra a = unchecked(std::move(labels), std::move(meet_table),
                                std::move(join_table), std::move(arrow_table),
                                std::move(neg_table), bottom, top);
    a.throw_if_invalid();
    return a;
  }

  // No validation; the caller vouches for (or intends to inspect) the data.
  static FiniteAlgebra unchecked(std::vector<std::string> labels,
                                 std::vector<Elem> meet_table,
                                 std::vector<Elem> join_table,
                                 std::vector<Elem> arrow_table,
                                 std::vector<Elem> neg_table, Elem bottom,
                                 Elem top) {
    FiniteAlgebra a;
    a.n_ = static_cast<int>(labels.size());
    check_labels(a.n_, labels);
    a.labels_ = std::move(labels);
    a.meet_ = std::move(meet_table);
    a.join_ = std::move(join_table);
    a.arrow_ = std::move(arrow_table);
    a.neg_ = std::move(neg_table);
    a.bottom_ = bottom;
    a.top_ = top;
    return a;
  }

  int size() const { return n_; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Elem x) const {
    return labels_.at(static_cast<std::size_t>(x));
  }
  std::optional<Elem> element_by_label(const std::string& s) const {
    for (int i = 0; i < n_; ++i)
      if (labels_[static_cast<std::size_t>(i)] == s) return i;
    return std::nullopt;
  }

  Elem meet(Elem x, Elem y) const {
    return meet_[static_cast<std::size_t>(x) * n_ + y];
  }
  Elem join(Elem x, Elem y) const {
    return join_[static_cast<std::size_t>(x) * n_ + y];
  }
  Elem arrow(Elem x, Elem y) const {
    return arrow_[static_cast<std::size_t>(x) * n_ + y];
  }
  Elem neg(Elem x) const { return neg_[static_cast<std::size_t>(x)]; }

  bool leq(Elem x, Elem y) const { return meet(x, y) == x; }

  // Pseudocomplement x* := x -> 0.
  Elem star(Elem x) const { return arrow(x, bottom_); }

  // x+ := x'*'.
  Elem plus(Elem x) const { return neg(star(neg(x))); }

  const std::vector<Elem>& meet_table() const { return meet_; }
  const std::vector<Elem>& join_table() const { return join_; }
  const std::vector<Elem>& arrow_table() const { return arrow_; }
  const std::vector<Elem>& neg_table() const { return neg_; }

  // Sweeps every structural axiom and lists each failure with its
  // lexicographically first witness.  Empty report iff the algebra is a
  // dually quasi-De Morgan semi-Heyting algebra.
  ValidationReport validate() const;

  bool operator==(const FiniteAlgebra& o) const {
    return n_ == o.n_ && bottom_ == o.bottom_ && top_ == o.top_ &&
           meet_ == o.meet_ && join_ == o.join_ && arrow_ == o.arrow_ &&
           neg_ == o.neg_;
  }

 private:
  FiniteAlgebra() = default;

  static void check_labels(int n, const std::vector<std::string>& labels) {
    if (n <= 0) throw AlgebraError("universe must be nonempty");
    if (n > kMaxUniverseSize)
      throw AlgebraError("universe size " + std::to_string(n) +
                         " exceeds supported maximum " +
                         std::to_string(kMaxUniverseSize));
    if (static_cast<int>(labels.size()) != n)
      throw AlgebraError("label list size mismatch");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].empty()) throw AlgebraError("empty label");
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j])
          throw AlgebraError("duplicate label \"" + labels[i] + "\"");
    }
  }

  void throw_if_invalid() const {
    ValidationReport rep = validate();
    if (rep.ok()) return;
    const ValidationIssue& first = rep.issues.front();
    const std::string detail = first.witness.binding.empty()
                                   ? std::string("(no witness)")
                                   : first.witness.to_string(labels_);
    if (first.axiom == "lattice" || first.axiom == "closure" ||
        first.axiom == "bounds")
      throw NotALattice("lattice laws fail: " + first.axiom + " at " + detail);
    if (first.axiom == "distributive")
      throw NotDistributive("distributivity fails at " + detail);
    throw AxiomViolation(first.axiom, detail);
  }

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Elem> meet_, join_, arrow_;
  std::vector<Elem> neg_;
  Elem bottom_ = 0, top_ = 0;
};

inline ValidationReport FiniteAlgebra::validate() const {
  ValidationReport rep;
  const int n = n_;
  auto wit1 = [&](const char* v, Elem x) {
    Witness w;
    w.binding.emplace_back(v, x);
    return w;
  };
  auto wit2 = [&](Elem x, Elem y) {
    Witness w;
    w.binding.emplace_back("x", x);
    w.binding.emplace_back("y", y);
    return w;
  };
  auto wit3 = [&](Elem x, Elem y, Elem z) {
    Witness w = wit2(x, y);
    w.binding.emplace_back("z", z);
    return w;
  };

  // Closure first: if tables are malformed, nothing else can be swept.
  {
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    bool bad = meet_.size() != nn || join_.size() != nn ||
               arrow_.size() != nn ||
               neg_.size() != static_cast<std::size_t>(n) || bottom_ < 0 ||
               bottom_ >= n || top_ < 0 || top_ >= n;
    if (!bad) {
      auto in_range = [n](Elem e) { return e >= 0 && e < n; };
      bad = !std::all_of(meet_.begin(), meet_.end(), in_range) ||
            !std::all_of(join_.begin(), join_.end(), in_range) ||
            !std::all_of(arrow_.begin(), arrow_.end(), in_range) ||
            !std::all_of(neg_.begin(), neg_.end(), in_range);
    }
    if (bad) {
      rep.issues.push_back({"closure", Witness{}});
      return rep;
    }
  }

  auto sweep2 = [&](const char* axiom, auto pred) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (!pred(x, y)) {
          rep.issues.push_back({axiom, wit2(x, y)});
          return;
        }
  };
  auto sweep3 = [&](const char* axiom, auto pred) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem z = 0; z < n; ++z)
          if (!pred(x, y, z)) {
            rep.issues.push_back({axiom, wit3(x, y, z)});
            return;
          }
  };

  // Lattice laws.
  sweep2("meet-commutative", [&](Elem x, Elem y) { return meet(x, y) == meet(y, x); });
  sweep2("join-commutative", [&](Elem x, Elem y) { return join(x, y) == join(y, x); });
  sweep3("meet-associative", [&](Elem x, Elem y, Elem z) {
    return meet(meet(x, y), z) == meet(x, meet(y, z));
  });
  sweep3("join-associative", [&](Elem x, Elem y, Elem z) {
    return join(join(x, y), z) == join(x, join(y, z));
  });
  for (Elem x = 0; x < n; ++x) {
    if (meet(x, x) != x) {
      rep.issues.push_back({"meet-idempotent", wit1("x", x)});
      break;
    }
  }
  for (Elem x = 0; x < n; ++x) {
    if (join(x, x) != x) {
      rep.issues.push_back({"join-idempotent", wit1("x", x)});
      break;
    }
  }
  sweep2("absorption", [&](Elem x, Elem y) {
    return meet(x, join(x, y)) == x && join(x, meet(x, y)) == x;
  });
  for (Elem x = 0; x < n; ++x) {
    if (meet(bottom_, x) != bottom_ || join(top_, x) != top_) {
      rep.issues.push_back({"bounds", wit1("x", x)});
      break;
    }
  }
  // Broken lattice structure; order-based axioms below would be noise.
  if (!rep.ok()) return rep;

  sweep3("distributive", [&](Elem x, Elem y, Elem z) {
    return meet(x, join(y, z)) == join(meet(x, y), meet(x, z));
  });

  // Semi-Heyting axioms.
  sweep2("SH1", [&](Elem x, Elem y) {
    return meet(x, arrow(x, y)) == meet(x, y);
  });
  sweep3("SH2", [&](Elem x, Elem y, Elem z) {
    return meet(x, arrow(y, z)) == meet(x, arrow(meet(x, y), meet(x, z)));
  });
  for (Elem x = 0; x < n; ++x) {
    if (arrow(x, x) != top_) {
      rep.issues.push_back({"SH3", wit1("x", x)});
      break;
    }
  }

  // Dually quasi-De Morgan axioms (a)-(d).
  if (neg(bottom_) != top_) rep.issues.push_back({"0' = 1", Witness{}});
  if (neg(top_) != bottom_) rep.issues.push_back({"1' = 0", Witness{}});
  sweep2("DQDb", [&](Elem x, Elem y) {
    return neg(meet(x, y)) == join(neg(x), neg(y));
  });
  sweep2("DQDc", [&](Elem x, Elem y) {
    return neg(neg(join(x, y))) == join(neg(neg(x)), neg(neg(y)));
  });
  for (Elem x = 0; x < n; ++x) {
    if (!leq(neg(neg(x)), x)) {
      rep.issues.push_back({"DQDd", wit1("x", x)});
      break;
    }
  }
  return rep;
}

}  // namespace shkit
