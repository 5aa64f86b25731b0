// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Usage: acceptance <path-to-shkit-cli> <data-dir>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "shkit/catalog.hpp"
#include "shkit/classify.hpp"
#include "shkit/corpus.hpp"
#include "shkit/enumerate.hpp"
#include "shkit/json_io.hpp"

using namespace shkit;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool fails_at(const FiniteAlgebra& a, const Identity& id,
              const std::string& var_binding) {
  const CheckOutcome out = check(a, id);
  return !out.pass && out.assignment.to_string(a.labels()) == var_binding;
}

std::string run_command(const std::string& cmd, int* exit_code) {
  const std::string path =
      "/tmp/shkit_acceptance_" + std::to_string(::getpid()) + ".out";
  const int rc = std::system((cmd + " > " + path + " 2>/dev/null").c_str());
  *exit_code = rc < 0 ? rc : WEXITSTATUS(rc);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(path.c_str());
  return buf.str();
}

// --- criterion 1: paper-example reproduction -------------------------------

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const FiniteAlgebra fig1 = builtin("fig1");
  const FiniteAlgebra fig2 = builtin("fig2");
  const FiniteAlgebra fig3 = builtin("fig3");
  const FiniteAlgebra ex15 = builtin("ex15");

  bool ok = fig1.validate().ok() && fig2.validate().ok() &&
            fig3.validate().ok() && ex15.validate().ok();
  report(1, "all four built-in algebras validate", ok);

  ok = fails_at(fig1, *find_identity("St"), "x=b") &&
       check(fig1, *find_identity("DM")).pass &&
       check(fig1, *find_identity("R")).pass &&
       level(fig1) == LevelResult::exactly(2);
  report(1, "fig1: Stone fails first at b, DM and R hold, level 2", ok);

  ok = check(fig2, *find_identity("JDM")).pass &&
       check(fig2, *find_identity("R")).pass &&
       !check(fig2, *find_identity("St")).pass &&
       level(fig2) == LevelResult::exactly(1);
  report(1, "fig2: JDM and R hold, Stone fails, level 1", ok);

  ok = check(fig3, *find_identity("JDM")).pass &&
       check(fig3, *find_identity("St")).pass &&
       fails_at(fig3, level_identity_alt(0), "x=a") &&
       level(fig3) == LevelResult::exactly(2);
  report(1, "fig3: JDM and Stone hold, L'_0 fails first at a, level 2", ok);

  ok = check(ex15, *find_identity("Lee")).pass &&
       !check(ex15, *find_identity("St")).pass &&
       fails_at(ex15, level_identity_alt(1), "x=2") &&
       level(ex15, 2) == LevelResult::exceeds(2);
  report(1, "ex15: Lee holds, Stone fails, L'_1 fails at 2, level exceeds 2",
         ok);

  const double secs = seconds_since(t0);
  report(1, "reproduction completes within one second", secs < 1.0,
         std::to_string(secs) + " s");
}

// --- criteria 2, 3, 5, 6: one corpus pass at bound 8 -----------------------
//
// Every identity below lies in the pseudocomplement fragment, whose value is
// fixed by the lattice and negation alone (x -> 0 is forced to the unique
// pseudocomplement in any semi-Heyting algebra).  One witness per
// (lattice, negation) family therefore decides each claim for the whole
// corpus at the bound.

struct CorpusFindings {
  std::uint64_t families = 0;
  std::uint64_t dm_l1 = 0;
  std::uint64_t dm_l1_not_st = 0;
  std::uint64_t jdm_st_not_lp1 = 0;
  std::uint64_t bdm_st_not_lp1 = 0;
  std::uint64_t lemma22_violations = 0;
  std::uint64_t lemma32_violations = 0;
  std::uint64_t lemma4_violations = 0;   // Lemmas 4.2-4.7 and Eq.(1) combined
  std::uint64_t dm_level_disagree = 0;   // level vs level_alt on DM algebras
  std::uint64_t jdmst_level_over_2 = 0;  // level > 2 on {JDM, St}
  std::uint64_t jdmst_level_disagree = 0;
  std::uint64_t chain_monotone_violations = 0;  // L_n passes but L_{n+1} fails
  double seconds = 0;
};

CorpusFindings corpus_pass(int bound) {
  const auto t0 = std::chrono::steady_clock::now();
  CorpusFindings f;
  const Identity dm = *find_identity("DM");
  const Identity st = *find_identity("St");
  const Identity jdm = *find_identity("JDM");
  const Identity bdm = *find_identity("BDM");
  const Identity l1 = level_identity(1);
  const Identity lp1 = level_identity_alt(1);
  const Identity lem32 = *find_identity("Lem3.2");
  std::vector<Identity> lemma22;
  for (const char* n : {"Lem2.2.i.a", "Lem2.2.i.b", "Lem2.2.iii", "Lem2.2.iv",
                        "Lem2.2.v"})
    lemma22.push_back(*find_identity(n));
  std::vector<Identity> lemma4;
  for (const char* n :
       {"Lem4.2", "Eq1", "Lem4.3", "Lem4.4", "Lem4.5", "Lem4.6", "Lem4.7"})
    lemma4.push_back(*find_identity(n));
  std::vector<Identity> levels;
  for (int n = 0; n <= 5; ++n) levels.push_back(level_identity(n));

  EnumerationOptions opt;
  opt.max_lattice_size = bound;
  enumerate_star_families(opt, [&](const FiniteAlgebra& a) {
    ++f.families;
    const bool is_dm = check(a, dm).pass;
    const bool is_st = check(a, st).pass;
    const bool is_jdm = check(a, jdm).pass;
    const bool is_bdm = check(a, bdm).pass;

    if (is_dm && check(a, l1).pass) {
      ++f.dm_l1;
      if (!is_st) ++f.dm_l1_not_st;
      if (!check(a, lem32).pass) ++f.lemma32_violations;
    }
    if (is_jdm && is_st) {
      if (!check(a, lp1).pass) ++f.jdm_st_not_lp1;
      for (const auto& id : lemma4)
        if (!check(a, id).pass) ++f.lemma4_violations;
      const LevelResult lv = level(a);
      if (!(lv.exact && lv.n <= 2)) ++f.jdmst_level_over_2;
      if (!(lv == level_alt(a))) ++f.jdmst_level_disagree;
    }
    if (is_bdm && is_st && !check(a, lp1).pass) ++f.bdm_st_not_lp1;

    for (const auto& id : lemma22)
      if (!check(a, id).pass) ++f.lemma22_violations;
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = 0; y < a.size(); ++y)
        if (a.leq(x, y) && !a.leq(a.neg(y), a.neg(x)))
          ++f.lemma22_violations;

    if (is_dm && !(level(a) == level_alt(a))) ++f.dm_level_disagree;

    for (int n = 0; n + 1 <= 5; ++n)
      if (check(a, levels[n]).pass && !check(a, levels[n + 1]).pass)
        ++f.chain_monotone_violations;
  });
  f.seconds = seconds_since(t0);
  return f;
}

void criteria2356(const CorpusFindings& f) {
  report(2, "corpus at bound 8 contains a De Morgan level-1 algebra",
         f.dm_l1 > 0, std::to_string(f.dm_l1) + " families");
  report(2, "no De Morgan level-1 corpus algebra fails Stone",
         f.dm_l1_not_st == 0,
         std::to_string(f.dm_l1_not_st) + " countermodels");
  report(2, "corpus pass stays under five minutes", f.seconds < 300.0,
         std::to_string(f.seconds) + " s");

  report(3, "no {JDM, St} corpus algebra fails L'_1 (level 2)",
         f.jdm_st_not_lp1 == 0,
         std::to_string(f.jdm_st_not_lp1) + " countermodels");
  report(3, "no {BDM, St} corpus algebra fails L'_1 (level 2)",
         f.bdm_st_not_lp1 == 0,
         std::to_string(f.bdm_st_not_lp1) + " countermodels");
  report(3, "corpus pass stays under five minutes per family of claims",
         f.seconds < 300.0, std::to_string(f.seconds) + " s");

  report(5, "basic negation laws hold on every corpus algebra",
         f.lemma22_violations == 0,
         std::to_string(f.lemma22_violations) + " violations");
  report(5, "x*' /\\ x' /\\ x* = 0 on De Morgan level-1 corpus algebras",
         f.lemma32_violations == 0);
  report(5, "the {JDM, St} lemma suite holds with zero violations",
         f.lemma4_violations == 0,
         std::to_string(f.lemma4_violations) + " violations");

  report(6, "level equals the alternate level on De Morgan corpus algebras",
         f.dm_level_disagree == 0);
  report(6, "{JDM, St} corpus algebras sit at level <= 2 with agreement",
         f.jdmst_level_over_2 == 0 && f.jdmst_level_disagree == 0);
  report(6, "L_n implies L_{n+1} across the corpus for n <= 4",
         f.chain_monotone_violations == 0);
}

// --- criterion 4: sharpness reproductions ----------------------------------

void criterion4() {
  SearchSpec to_fig1;
  to_fig1.satisfy = {*find_identity("DM"), level_identity_alt(1)};
  to_fig1.falsify = {*find_identity("St")};
  to_fig1.max_lattice_size = 7;
  const auto res1 = search(to_fig1);
  bool has_fig1 = false;
  const FiniteAlgebra fig1 = builtin("fig1");
  for (const auto& a : res1)
    if (is_isomorphic(a, fig1)) {
      has_fig1 = true;
      break;
    }
  report(4, "search {DM, L'_1} minus Stone at size 7 recovers fig1",
         !res1.empty() && has_fig1, std::to_string(res1.size()) + " matches");

  SearchSpec to_fig2;
  to_fig2.satisfy = {*find_identity("JDM"), level_identity(1)};
  to_fig2.falsify = {*find_identity("St")};
  to_fig2.max_lattice_size = 5;
  const auto res2 = search(to_fig2);
  bool has_fig2 = false;
  const FiniteAlgebra fig2 = builtin("fig2");
  for (const auto& a : res2)
    if (is_isomorphic(a, fig2)) {
      has_fig2 = true;
      break;
    }
  report(4, "search {JDM, L_1} minus Stone at size 5 recovers fig2",
         !res2.empty() && has_fig2, std::to_string(res2.size()) + " matches");
}

// --- criterion 7: enumerator oracle equivalence ----------------------------

CoverRelation chain(int n) {
  CoverRelation c;
  c.universe_size = n;
  for (int i = 0; i < n; ++i) c.labels.push_back("e" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) c.covers.emplace_back(i, i + 1);
  return c;
}

std::set<std::vector<Elem>> brute_force_arrows(const CoverRelation& cov) {
  const auto t = detail::tables_from_covers(cov);
  const int n = t.n;
  auto meet = [&](Elem x, Elem y) { return t.meet[x * n + y]; };
  std::set<std::vector<Elem>> good;
  std::vector<Elem> tbl(n * n, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= n;
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

std::set<std::vector<Elem>> brute_force_negations(const CoverRelation& cov) {
  const auto t = detail::tables_from_covers(cov);
  const int n = t.n;
  auto meet = [&](Elem x, Elem y) { return t.meet[x * n + y]; };
  auto join = [&](Elem x, Elem y) { return t.join[x * n + y]; };
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
    for (Elem x = 0; x < n && ok; ++x) ok = meet(neg[neg[x]], x) == neg[neg[x]];
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y) {
        ok = neg[meet(x, y)] == join(neg[x], neg[y]);
        if (ok) ok = neg[neg[join(x, y)]] == join(neg[neg[x]], neg[neg[y]]);
      }
    if (ok) good.insert(neg);
  }
  return good;
}

void criterion7() {
  for (int n : {2, 3}) {
    const auto pruned = semiheyting_arrows(chain(n));
    const auto brute = brute_force_arrows(chain(n));
    const bool equal =
        std::set<std::vector<Elem>>(pruned.begin(), pruned.end()) == brute;
    report(7,
           "pruned arrows equal exhaustive brute force on the " +
               std::to_string(n) + "-chain",
           equal, std::to_string(pruned.size()) + " tables");
  }
  const auto arrows2 = semiheyting_arrows(chain(2));
  const auto negs2 = dqd_negations(chain(2));
  report(7, "the 2-chain carries exactly 2 arrows and 1 negation",
         arrows2.size() == 2 && negs2.size() == 1 &&
             brute_force_negations(chain(2)).size() == 1);
}

// --- criterion 8: determinism of the CLI -----------------------------------

void criterion8(const std::string& cli, const std::string& data_dir) {
  int rc1 = 0, rc2 = 0;
  const std::string verify1 =
      run_command(cli + " verify-paper --json --corpus-size 5 --threads 1", &rc1);
  const std::string verify2 =
      run_command(cli + " verify-paper --json --corpus-size 5 --threads 3", &rc2);
  report(8, "verify-paper --json is byte-identical across thread counts",
         !verify1.empty() && verify1 == verify2 && rc1 == 0 && rc2 == 0);

  const std::string enum1 = run_command(
      cli + " enumerate --max-size 5 --satisfy JDM --falsify St --threads 1",
      &rc1);
  const std::string enum2 = run_command(
      cli + " enumerate --max-size 5 --satisfy JDM --falsify St --threads 3",
      &rc2);
  report(8, "enumerate output is byte-identical across thread counts",
         !enum1.empty() && enum1 == enum2 && rc1 == 0 && rc2 == 0);

  const std::string fig1 = data_dir + "/fig1.json";
  int rc_fail = 0, rc_pass = 0, rc_err = 0;
  run_command(cli + " check " + fig1 + " St", &rc_fail);
  run_command(cli + " check " + fig1 + " DM", &rc_pass);
  run_command(cli + " check " + fig1 + " \"x = \"", &rc_err);
  report(8, "check exit codes: 0 on pass, 1 on counterexample, 2 on error",
         rc_pass == 0 && rc_fail == 1 && rc_err == 2);

  int rc_level = 0;
  const std::string lvl =
      run_command(cli + " level " + data_dir + "/fig3.json --max 4", &rc_level);
  report(8, "level subcommand prints the bare level", lvl == "2\n" && rc_level == 0);

  int rc_eval = 0;
  const std::string val =
      run_command(cli + " eval " + fig1 + " \"x -> 0\" x=b", &rc_eval);
  report(8, "eval subcommand prints the element label", val == "d\n" && rc_eval == 0);

  const std::string ids_path =
      "/tmp/shkit_acceptance_ids_" + std::to_string(::getpid()) + ".txt";
  {
    std::ofstream ids(ids_path);
    ids << "# two catalog entries\n"
        << "St : x* \\/ x** = 1\n"
        << "DM : x'' = x\n";
  }
  int rc_file = 0, rc_named = 0;
  const std::string file_out =
      run_command(cli + " check " + fig1 + " --file " + ids_path, &rc_file);
  std::remove(ids_path.c_str());
  report(8, "identity files drive check with per-identity verdicts",
         rc_file == 1 && file_out.find("St: fail") != std::string::npos &&
             file_out.find("DM: pass") != std::string::npos);
  run_command(cli + " check " + fig1 + " L_2", &rc_named);
  report(8, "generated level identities are addressable by name",
         rc_named == 0);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <shkit-cli> <data-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string data_dir = argv[2];

  criterion1();
  const CorpusFindings findings = corpus_pass(8);
  criteria2356(findings);
  criterion4();
  criterion7();
  criterion8(cli, data_dir);

  std::cout << (g_failures == 0 ? "acceptance: all criteria hold\n"
                                : "acceptance: FAILURES present\n");
  return g_failures == 0 ? 0 : 1;
}
