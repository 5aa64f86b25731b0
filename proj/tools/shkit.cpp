// shkit: verification and search for finite semi-Heyting algebras with a
// dually quasi-De Morgan negation.
//
// Subcommands: check, classify, level, eval, enumerate, verify-paper.
// Exit codes: 0 = success / claim holds, 1 = counterexample or failed claim,
// 2 = usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "shkit/algebra.hpp"
#include "shkit/catalog.hpp"
#include "shkit/classify.hpp"
#include "shkit/corpus.hpp"
#include "shkit/enumerate.hpp"
#include "shkit/json_io.hpp"
#include "shkit/term.hpp"

namespace {

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t node_cap_from_env() {
  if (const char* env = std::getenv("SHKIT_MAX_NODES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw shkit::AlgebraError("SHKIT_MAX_NODES must be a positive integer");
  }
  return shkit::kDefaultNodeCap;
}

shkit::FiniteAlgebra load_algebra(const std::string& path) {
  if (path == "fig1" || path == "fig2" || path == "fig3" || path == "ex15")
    return shkit::builtin(path);
  return shkit::load_algebra_file(path);
}

std::vector<shkit::Identity> resolve_list(const std::vector<std::string>& names) {
  std::vector<shkit::Identity> ids;
  for (const auto& name : names) ids.push_back(shkit::resolve_identity(name));
  return ids;
}

int cmd_check(const std::string& algebra_path, const std::string& identity,
              const std::string& identities_file, bool json, int threads) {
  const shkit::FiniteAlgebra a = load_algebra(algebra_path);
  std::vector<shkit::Identity> ids;
  if (!identities_file.empty()) {
    std::ifstream in(identities_file);
    if (!in)
      throw shkit::FormatError("cannot open \"" + identities_file + "\"");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    ids = shkit::parse_identity_lines(text);
  }
  if (!identity.empty()) ids.push_back(shkit::resolve_identity(identity));
  if (ids.empty())
    throw shkit::FormatError("no identity given (name, text or --file)");

  bool all_pass = true;
  shkit::Json results = shkit::Json::array();
  for (const auto& id : ids) {
    const shkit::CheckOutcome out = shkit::check(a, id, nullptr, threads);
    all_pass = all_pass && out.pass;
    if (json) {
      shkit::Json r = shkit::outcome_to_json(out, a);
      r["identity"] = id.name;
      r["text"] = id.text();
      results.push_back(r);
    } else {
      std::cout << id.name << ": " << out.describe(a) << "\n";
    }
  }
  if (json) std::cout << results.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

int cmd_classify(const std::string& algebra_path, int max_level, bool json,
                 int threads) {
  const shkit::FiniteAlgebra a = load_algebra(algebra_path);
  const shkit::ClassificationReport rep = shkit::classify(a, max_level, threads);
  if (json) {
    std::cout << shkit::report_to_json(rep).dump(2) << "\n";
  } else {
    for (const auto& [name, value] : rep.memberships)
      std::cout << name << ": " << (value ? "yes" : "no") << "\n";
    std::cout << "level: " << rep.level.to_string() << "\n";
  }
  return 0;
}

int cmd_level(const std::string& algebra_path, int max_n, bool alt, bool json,
              int threads) {
  const shkit::FiniteAlgebra a = load_algebra(algebra_path);
  const shkit::LevelResult lv = alt ? shkit::level_alt(a, max_n, threads)
                                    : shkit::level(a, max_n, threads);
  if (json)
    std::cout << shkit::level_to_json(lv).dump(2) << "\n";
  else
    std::cout << lv.to_string() << "\n";
  return 0;
}

int cmd_eval(const std::string& algebra_path, const std::string& term_text,
             const std::vector<std::string>& bindings, bool json) {
  const shkit::FiniteAlgebra a = load_algebra(algebra_path);
  const shkit::TermPtr t = shkit::parse(term_text);
  shkit::Assignment asg;
  for (const auto& b : bindings) {
    const auto eq = b.find('=');
    if (eq == std::string::npos)
      throw shkit::FormatError("binding \"" + b + "\" is not var=element");
    const std::string var = b.substr(0, eq), label = b.substr(eq + 1);
    const auto el = a.element_by_label(label);
    if (!el)
      throw shkit::FormatError("unknown element label \"" + label + "\"");
    asg[var] = *el;
  }
  const shkit::Elem v = shkit::eval(t, a, asg);
  if (json) {
    shkit::Json j;
    j["term"] = shkit::print(t);
    j["value"] = a.label(v);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << a.label(v) << "\n";
  }
  return 0;
}

int cmd_enumerate(int max_size, const std::vector<std::string>& satisfy,
                  const std::vector<std::string>& falsify,
                  std::size_t max_results, const std::string& out_path,
                  int threads, int max_level) {
  shkit::SearchSpec spec;
  spec.satisfy = resolve_list(satisfy);
  spec.falsify = resolve_list(falsify);
  spec.max_lattice_size = max_size;
  spec.max_results = max_results;

  shkit::EnumerationOptions opt;
  opt.max_lattice_size = max_size;
  opt.node_cap = node_cap_from_env();
  opt.threads = threads;

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw shkit::FormatError("cannot open \"" + out_path + "\"");
    out = &file;
  }

  // Newline-delimited JSON: one algebra plus its classification per line.
  std::size_t count = 0;
  shkit::enumerate_corpus(opt, [&](const shkit::FiniteAlgebra& a) {
    if (count >= spec.max_results) return;
    for (const auto& id : spec.satisfy)
      if (!shkit::check(a, id).pass) return;
    for (const auto& id : spec.falsify)
      if (shkit::check(a, id).pass) return;
    shkit::Json line;
    line["algebra"] = shkit::algebra_to_json(a);
    line["classification"] =
        shkit::report_to_json(shkit::classify(a, max_level));
    *out << line.dump() << "\n";
    ++count;
  });
  std::cerr << "enumerated " << count << " algebras\n";
  return 0;
}

int cmd_verify_paper(int corpus_size, bool json, int threads) {
  shkit::VerifyOptions opt;
  opt.corpus_size = corpus_size;
  opt.node_cap = node_cap_from_env();
  opt.threads = threads;
  const std::vector<shkit::PaperClaim> claims = shkit::verify_paper(opt);
  bool all = true;
  if (json) {
    shkit::Json arr = shkit::Json::array();
    for (const auto& c : claims) {
      shkit::Json j;
      j["id"] = c.id;
      j["description"] = c.description;
      j["expected"] = c.expected;
      j["actual"] = c.actual;
      j["status"] = c.pass ? "pass" : "FAIL";
      arr.push_back(j);
      all = all && c.pass;
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& c : claims) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << ": "
                << c.description << " [expected: " << c.expected
                << ", actual: " << c.actual << "]\n";
      all = all && c.pass;
    }
    std::cout << (all ? "all claims hold\n" : "some claims FAILED\n");
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite semi-Heyting algebra toolkit"};
  app.require_subcommand(1);

  std::string algebra_path, identity, identities_file, term_text, out_path;
  std::vector<std::string> bindings, satisfy, falsify;
  bool json = false, alt = false;
  int threads = default_threads();
  int max_level = shkit::kDefaultLevelBound;
  int max_size = 8;
  int corpus_size = 8;
  std::size_t max_results = SIZE_MAX;

  CLI::App* check = app.add_subcommand("check", "check an identity against an algebra");
  check->add_option("algebra", algebra_path, "algebra JSON file or builtin name")->required();
  check->add_option("identity", identity, "catalog name (e.g. St, DM, L_2) or inline text (e.g. \"x = x''\")");
  check->add_option("--file", identities_file, "identity file (name : lhs = rhs per line)");
  check->add_flag("--json", json, "machine-readable output");
  check->add_option("--threads", threads, "worker count");

  CLI::App* classify = app.add_subcommand("classify", "variety memberships and level");
  classify->add_option("algebra", algebra_path)->required();
  classify->add_option("--max-level", max_level, "level search bound");
  classify->add_flag("--json", json);
  classify->add_option("--threads", threads);

  CLI::App* level = app.add_subcommand("level", "compute the level of an algebra");
  level->add_option("algebra", algebra_path)->required();
  level->add_option("--max", max_level, "largest level to try");
  level->add_flag("--alt", alt, "use the iterated ('*) characterization");
  level->add_flag("--json", json);
  level->add_option("--threads", threads);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a term");
  eval->add_option("algebra", algebra_path)->required();
  eval->add_option("term", term_text)->required();
  eval->add_option("bindings", bindings, "variable bindings, e.g. x=b y=0");
  eval->add_flag("--json", json);

  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate algebras, optionally constrained");
  enumerate->add_option("--max-size", max_size, "largest lattice size")->check(CLI::Range(1, shkit::kMaxEnumerationSize));
  enumerate->add_option("--satisfy", satisfy, "identities that must pass");
  enumerate->add_option("--falsify", falsify, "identities that must fail");
  enumerate->add_option("--max-results", max_results);
  enumerate->add_option("--out", out_path, "write newline-delimited JSON here");
  enumerate->add_option("--threads", threads);
  enumerate->add_option("--max-level", max_level, "level bound for reports");
  enumerate->add_flag("--json", json, "output is newline-delimited JSON either way");

  CLI::App* verify = app.add_subcommand("verify-paper", "run the built-in claim suite");
  verify->add_option("--corpus-size", corpus_size, "lattice size bound for corpus claims")->check(CLI::Range(1, shkit::kMaxEnumerationSize));
  verify->add_flag("--json", json);
  verify->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed())
      return cmd_check(algebra_path, identity, identities_file, json, threads);
    if (classify->parsed())
      return cmd_classify(algebra_path, max_level, json, threads);
    if (level->parsed())
      return cmd_level(algebra_path, max_level, alt, json, threads);
    if (eval->parsed()) return cmd_eval(algebra_path, term_text, bindings, json);
    if (enumerate->parsed())
      return cmd_enumerate(max_size, satisfy, falsify, max_results, out_path,
                           threads, max_level);
    if (verify->parsed()) return cmd_verify_paper(corpus_size, json, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
