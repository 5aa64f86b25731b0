#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shkit/algebra.hpp"
#include "shkit/catalog.hpp"
#include "shkit/classify.hpp"
#include "shkit/enumerate.hpp"

namespace shkit {

namespace detail {

struct BuiltinSpec {
  std::vector<std::string> universe;              // internal index order
  std::vector<std::pair<std::string, std::string>> covers;
  std::vector<std::string> table_order;           // row/column order of tables
  std::vector<std::vector<std::string>> arrow;    // arrow[x][y] = x -> y
  std::vector<std::string> neg;
};

inline FiniteAlgebra build(const BuiltinSpec& s) {
  const int n = static_cast<int>(s.universe.size());
  auto uindex = [&](const std::string& l) {
    for (int i = 0; i < n; ++i)
      if (s.universe[i] == l) return i;
    throw AlgebraError("builtin table uses unknown label \"" + l + "\"");
  };
  CoverRelation cov;
  cov.universe_size = n;
  cov.labels = s.universe;
  for (const auto& [lo, hi] : s.covers)
    cov.covers.emplace_back(uindex(lo), uindex(hi));
  // Tables are authored in their printed row order; normalize to index order.
  std::vector<Elem> arrow(static_cast<std::size_t>(n) * n);
  std::vector<Elem> neg(n);
  for (int i = 0; i < n; ++i) {
    const int ui = uindex(s.table_order[i]);
    neg[ui] = uindex(s.neg[i]);
    for (int j = 0; j < n; ++j)
      arrow[static_cast<std::size_t>(ui) * n + uindex(s.table_order[j])] =
          uindex(s.arrow[i][j]);
  }
  return FiniteAlgebra::from_covers(cov, std::move(arrow), std::move(neg));
}

inline const BuiltinSpec& fig1_spec() {
  static const BuiltinSpec s{
      {"0", "a", "b", "c", "d", "e", "1"},
      {{"0", "d"}, {"0", "b"}, {"d", "a"}, {"b", "a"},
       {"a", "e"}, {"a", "c"}, {"e", "1"}, {"c", "1"}},
      {"0", "1", "d", "e", "b", "c", "a"},
      {
          {"1", "1", "1", "1", "1", "1", "1"},
          {"0", "1", "d", "e", "b", "c", "a"},
          {"b", "1", "1", "1", "b", "1", "1"},
          {"0", "1", "d", "1", "b", "c", "c"},
          {"d", "1", "d", "1", "1", "1", "1"},
          {"0", "1", "d", "e", "b", "1", "e"},
          {"0", "1", "d", "1", "b", "1", "1"},
      },
      {"1", "0", "e", "d", "c", "b", "a"}};
  return s;
}

inline const BuiltinSpec& fig2_spec() {
  static const BuiltinSpec s{
      {"0", "1", "2", "3", "4"},
      {{"0", "2"}, {"0", "3"}, {"2", "4"}, {"3", "4"}, {"4", "1"}},
      {"0", "1", "2", "3", "4"},
      {
          {"1", "0", "3", "2", "0"},
          {"0", "1", "2", "3", "4"},
          {"3", "2", "1", "0", "2"},
          {"2", "3", "0", "1", "3"},
          {"0", "1", "2", "3", "1"},
      },
      {"1", "0", "1", "1", "1"}};
  return s;
}

inline const BuiltinSpec& fig3_spec() {
  static const BuiltinSpec s{
      {"0", "1", "a", "b", "c", "d"},
      {{"0", "d"}, {"0", "b"}, {"d", "a"}, {"b", "a"},
       {"d", "c"}, {"a", "1"}, {"c", "1"}},
      {"0", "1", "a", "b", "c", "d"},
      {
          {"1", "0", "0", "c", "b", "b"},
          {"0", "1", "a", "b", "c", "d"},
          {"0", "1", "1", "b", "c", "c"},
          {"c", "b", "b", "1", "0", "0"},
          {"b", "c", "d", "0", "1", "a"},
          {"b", "c", "c", "0", "1", "1"},
      },
      {"1", "0", "b", "b", "c", "1"}};
  return s;
}

inline const BuiltinSpec& ex15_spec() {
  static const BuiltinSpec s{
      {"0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12",
       "13", "14"},
      {{"0", "3"},  {"0", "13"}, {"0", "10"}, {"3", "14"},  {"3", "11"},
       {"13", "14"}, {"13", "6"}, {"10", "11"}, {"10", "6"}, {"10", "8"},
       {"14", "12"}, {"14", "7"}, {"11", "7"},  {"11", "9"}, {"6", "7"},
       {"6", "4"},   {"8", "9"},  {"8", "4"},   {"12", "2"}, {"7", "2"},
       {"7", "5"},   {"9", "5"},  {"4", "5"},   {"2", "1"},  {"5", "1"}},
      {"0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12",
       "13", "14"},
      {
          {"1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1"},
          {"0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14"},
          {"0", "1", "1", "3", "4", "5", "4", "5", "8", "9", "8", "9", "12", "13", "14"},
          {"4", "1", "1", "1", "4", "1", "4", "1", "4", "1", "4", "1", "1", "4", "1"},
          {"3", "1", "2", "3", "1", "1", "2", "2", "9", "9", "11", "11", "12", "12", "12"},
          {"0", "1", "2", "3", "4", "1", "6", "2", "8", "9", "10", "11", "12", "13", "12"},
          {"3", "1", "1", "3", "1", "1", "1", "1", "9", "9", "9", "9", "12", "12", "12"},
          {"0", "1", "1", "3", "4", "1", "4", "1", "8", "9", "8", "9", "12", "13", "12"},
          {"12", "1", "2", "12", "1", "1", "2", "2", "1", "1", "2", "2", "12", "12", "12"},
          {"13", "1", "2", "12", "4", "1", "6", "2", "4", "1", "6", "2", "12", "13", "12"},
          {"12", "1", "1", "12", "1", "1", "1", "1", "1", "1", "1", "1", "12", "12", "12"},
          {"13", "1", "1", "12", "4", "1", "4", "1", "4", "1", "4", "1", "12", "13", "12"},
          {"8", "1", "1", "9", "4", "5", "4", "5", "8", "9", "8", "9", "1", "4", "5"},
          {"9", "1", "1", "9", "1", "1", "1", "1", "9", "9", "9", "9", "1", "1", "1"},
          {"8", "1", "1", "9", "4", "1", "4", "1", "8", "9", "8", "9", "1", "4", "1"},
      },
      {"1", "0", "3", "2", "8", "10", "9", "11", "8", "10", "9", "11", "12",
       "1", "2"}};
  return s;
}

}  // namespace detail

// The four worked examples shipped as data: fig1 (7 elements), fig2 (5),
// fig3 (6) and ex15 (15).  Each passes the full validation sweep.
inline FiniteAlgebra builtin(const std::string& name) {
  if (name == "fig1") return detail::build(detail::fig1_spec());
  if (name == "fig2") return detail::build(detail::fig2_spec());
  if (name == "fig3") return detail::build(detail::fig3_spec());
  if (name == "ex15") return detail::build(detail::ex15_spec());
  throw AlgebraError("unknown builtin algebra \"" + name +
                     "\" (expected fig1, fig2, fig3 or ex15)");
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"fig1", "fig2", "fig3", "ex15"};
  return names;
}

// ---------------------------------------------------------------------------
// Claim-by-claim verification.

struct PaperClaim {
  std::string id;
  std::string description;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct VerifyOptions {
  int corpus_size = 8;   // bound for corpus-conditional claims
  std::uint64_t node_cap = kDefaultNodeCap;
  int threads = 1;
};

namespace detail {

inline std::string outcome_brief(const CheckOutcome& out,
                                 const FiniteAlgebra& a) {
  if (out.pass) return "pass";
  return "fail at " + out.assignment.to_string(a.labels());
}

// x <= y implies y' <= x', swept directly (not expressible as an identity).
inline bool neg_antitone(const FiniteAlgebra& a) {
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y)
      if (a.leq(x, y) && !a.leq(a.neg(y), a.neg(x))) return false;
  return true;
}

}  // namespace detail

inline std::vector<PaperClaim> verify_paper(const VerifyOptions& opt = {}) {
  std::vector<PaperClaim> claims;
  auto claim = [&](std::string id, std::string description,
                   std::string expected, std::string actual) {
    PaperClaim c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.expected = std::move(expected);
    c.actual = std::move(actual);
    c.pass = c.expected == c.actual;
    claims.push_back(std::move(c));
  };

  const FiniteAlgebra fig1 = builtin("fig1");
  const FiniteAlgebra fig2 = builtin("fig2");
  const FiniteAlgebra fig3 = builtin("fig3");
  const FiniteAlgebra ex15 = builtin("ex15");

  auto holds = [&](const FiniteAlgebra& a, const std::string& name) {
    return check(a, *find_identity(name)).pass ? "pass" : "fail";
  };

  // Example 3.6 and the remark after it.
  claim("Ex3.6-valid", "fig1 passes the structural validation sweep", "valid",
        fig1.validate().ok() ? "valid" : "invalid");
  claim("Ex3.6-St", "fig1 fails the Stone identity at b", "fail at x=b",
        detail::outcome_brief(check(fig1, *find_identity("St")), fig1));
  claim("Ex3.6-DM", "fig1 has an involutive negation", "pass",
        holds(fig1, "DM"));
  claim("Ex3.6-R", "fig1 is regular", "pass", holds(fig1, "R"));
  claim("Ex3.6-level", "fig1 is at level 2", "2",
        level(fig1, kDefaultLevelBound, opt.threads).to_string());

  // Example 3.7.
  claim("Ex3.7-valid", "fig2 passes the structural validation sweep", "valid",
        fig2.validate().ok() ? "valid" : "invalid");
  claim("Ex3.7-JDM", "fig2 satisfies the join De Morgan law", "pass",
        holds(fig2, "JDM"));
  claim("Ex3.7-R", "fig2 is regular", "pass", holds(fig2, "R"));
  claim("Ex3.7-St", "fig2 fails the Stone identity", "fail at x=2",
        detail::outcome_brief(check(fig2, *find_identity("St")), fig2));
  claim("Ex3.7-level", "fig2 is at level 1", "1",
        level(fig2, kDefaultLevelBound, opt.threads).to_string());

  // Example 4.11.
  claim("Ex4.11-valid", "fig3 passes the structural validation sweep", "valid",
        fig3.validate().ok() ? "valid" : "invalid");
  claim("Ex4.11-JDM", "fig3 satisfies the join De Morgan law", "pass",
        holds(fig3, "JDM"));
  claim("Ex4.11-St", "fig3 satisfies the Stone identity", "pass",
        holds(fig3, "St"));
  claim("Ex4.11-L'0", "fig3 fails the level 1 characterization at a",
        "fail at x=a",
        detail::outcome_brief(check(fig3, level_identity_alt(0)), fig3));
  claim("Ex4.11-level", "fig3 is at level 2", "2",
        level(fig3, kDefaultLevelBound, opt.threads).to_string());

  // Example 4.13.
  claim("Ex4.13-valid", "ex15 passes the structural validation sweep", "valid",
        ex15.validate().ok() ? "valid" : "invalid");
  claim("Ex4.13-JDM", "ex15 satisfies the join De Morgan law", "pass",
        holds(ex15, "JDM"));
  claim("Ex4.13-Lee", "ex15 satisfies the Lee identity", "pass",
        holds(ex15, "Lee"));
  claim("Ex4.13-St", "ex15 fails the Stone identity", "fail",
        check(ex15, *find_identity("St")).pass ? "pass" : "fail");
  claim("Ex4.13-L'1", "ex15 fails the level 2 characterization at 2",
        "fail at x=2",
        detail::outcome_brief(check(ex15, level_identity_alt(1)), ex15));
  claim("Ex4.13-level", "ex15 is at level greater than 2", "exceeds 2",
        level(ex15, 2, opt.threads).to_string());

  // Corpus-conditional claims (finite evidence at the configured bound, not
  // proofs).
  const std::string bound = " (corpus size <= " +
                            std::to_string(opt.corpus_size) + ")";
  const Identity id_dm = *find_identity("DM");
  const Identity id_st = *find_identity("St");
  const Identity id_jdm = *find_identity("JDM");
  const Identity id_bdm = *find_identity("BDM");
  const Identity id_l1 = level_identity(1);
  const Identity id_lp1 = level_identity_alt(1);
  const Identity id_lem32 = *find_identity("Lem3.2");
  const std::vector<std::string> lem22 = {"Lem2.2.i.a", "Lem2.2.i.b",
                                          "Lem2.2.iii", "Lem2.2.iv",
                                          "Lem2.2.v"};
  const std::vector<std::string> lem4 = {"Lem4.2", "Eq1",    "Lem4.3",
                                         "Lem4.4", "Lem4.5", "Lem4.6",
                                         "Lem4.7"};

  std::uint64_t total = 0, dm_l1 = 0, dm_l1_not_st = 0;
  std::uint64_t jdm_st_not_lp1 = 0, bdm_st_not_lp1 = 0;
  std::uint64_t lem22_viol = 0, lem32_viol = 0;
  std::vector<std::uint64_t> lem4_viol(lem4.size(), 0);

  // Every identity above lives in the pseudocomplement fragment, so its
  // verdict is shared by all semi-Heyting arrows over a fixed lattice and
  // negation.  Checking one witness per (lattice, negation) family therefore
  // decides each claim for the whole corpus at this bound, without walking
  // the full arrow space.  ("1 -> x = x" is the exception; SH1 forces it on
  // every validated table, and it is checked on each witness.)
  EnumerationOptions eopt;
  eopt.max_lattice_size = opt.corpus_size;
  eopt.node_cap = opt.node_cap;
  eopt.threads = opt.threads;
  enumerate_star_families(eopt, [&](const FiniteAlgebra& a) {
    ++total;
    const bool dm = check(a, id_dm).pass;
    const bool st = check(a, id_st).pass;
    const bool jdm = check(a, id_jdm).pass;
    const bool bdm = check(a, id_bdm).pass;
    if (dm && check(a, id_l1).pass) {
      ++dm_l1;
      if (!st) ++dm_l1_not_st;
      if (!check(a, id_lem32).pass) ++lem32_viol;
    }
    if (jdm && st) {
      if (!check(a, id_lp1).pass) ++jdm_st_not_lp1;
      for (std::size_t i = 0; i < lem4.size(); ++i)
        if (!check(a, *find_identity(lem4[i])).pass) ++lem4_viol[i];
    }
    if (bdm && st) {
      if (!check(a, id_lp1).pass) ++bdm_st_not_lp1;
    }
    bool ok22 = detail::neg_antitone(a);
    for (const auto& name : lem22)
      if (ok22 && !check(a, *find_identity(name)).pass) ok22 = false;
    if (!ok22) ++lem22_viol;
  });

  claim("T3.3-corpus",
        "every De Morgan level-1 corpus algebra satisfies Stone" + bound,
        "0 countermodels", std::to_string(dm_l1_not_st) + " countermodels");
  claim("Cor3.4-corpus",
        "DM_1 and DMSt_1 coincide on the corpus, witnessed nonempty" + bound,
        "nonempty, 0 countermodels",
        (dm_l1 > 0 ? "nonempty, " : "empty, ") +
            std::to_string(dm_l1_not_st) + " countermodels");
  claim("T4.8-corpus",
        "every dually ms Stone corpus algebra is at level 2" + bound,
        "0 countermodels", std::to_string(jdm_st_not_lp1) + " countermodels");
  claim("T4.15-corpus",
        "every blended Stone corpus algebra is at level 2" + bound,
        "0 countermodels", std::to_string(bdm_st_not_lp1) + " countermodels");
  claim("Lem2.2-corpus",
        "the basic negation laws hold on every corpus algebra" + bound,
        "0 violations", std::to_string(lem22_viol) + " violations");
  claim("Lem3.2-corpus",
        "x*' /\\ x' /\\ x* = 0 on De Morgan level-1 corpus algebras" + bound,
        "0 violations", std::to_string(lem32_viol) + " violations");
  for (std::size_t i = 0; i < lem4.size(); ++i)
    claim(lem4[i] + "-corpus",
          lem4[i] + " holds on dually ms Stone corpus algebras" + bound,
          "0 violations", std::to_string(lem4_viol[i]) + " violations");
  claim("corpus-size",
        "corpus enumeration produced algebras to test against" + bound,
        "nonempty", total > 0 ? "nonempty" : "empty");

  return claims;
}

}  // namespace shkit
