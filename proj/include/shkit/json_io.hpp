#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "shkit/algebra.hpp"
#include "shkit/catalog.hpp"
#include "shkit/classify.hpp"

namespace shkit {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Elem require_element(const FiniteAlgebra& a, const std::string& label,
                            const std::string& where) {
  if (auto e = a.element_by_label(label)) return *e;
  throw FormatError("unknown element label \"" + label + "\" in " + where);
}

inline int label_index(const std::vector<std::string>& labels,
                       const std::string& s, const std::string& where) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<int>(i);
  throw FormatError("unknown element label \"" + s + "\" in " + where);
}

inline std::vector<Elem> parse_table(const Json& j, int n,
                                     const std::vector<std::string>& labels,
                                     const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw FormatError(where + " must be an " + std::to_string(n) + "x" +
                      std::to_string(n) + " table");
  std::vector<Elem> table;
  table.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw FormatError(where + " row has wrong length");
    for (const auto& cell : row) {
      if (!cell.is_string()) throw FormatError(where + " entries must be labels");
      table.push_back(label_index(labels, cell.get<std::string>(), where));
    }
  }
  return table;
}

}  // namespace detail

// Algebra file schema: {"labels": [...], "covers": [["0","d"], ...] or
// "meet"/"join" full label tables, "arrow": n x n label table (arrow[x][y]
// is x -> y, row-major), "neg": label list, "bottom": label, "top": label}.
// Parsing is strict: unknown keys are rejected.
inline FiniteAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("algebra file must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "labels" && key != "covers" && key != "meet" && key != "join" &&
        key != "arrow" && key != "neg" && key != "bottom" && key != "top")
      throw FormatError("unknown key \"" + key + "\" in algebra file");
  }
  for (const char* key : {"labels", "arrow", "neg", "bottom", "top"})
    if (!j.contains(key))
      throw FormatError(std::string("missing key \"") + key + "\"");

  std::vector<std::string> labels;
  for (const auto& l : j.at("labels")) {
    if (!l.is_string()) throw FormatError("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  const int n = static_cast<int>(labels.size());

  std::vector<Elem> arrow = detail::parse_table(j.at("arrow"), n, labels, "arrow");
  const Json& jneg = j.at("neg");
  if (!jneg.is_array() || static_cast<int>(jneg.size()) != n)
    throw FormatError("neg must be a length-" + std::to_string(n) + " list");
  std::vector<Elem> neg;
  for (const auto& cell : jneg) {
    if (!cell.is_string()) throw FormatError("neg entries must be labels");
    neg.push_back(detail::label_index(labels, cell.get<std::string>(), "neg"));
  }
  const Elem bottom =
      detail::label_index(labels, j.at("bottom").get<std::string>(), "bottom");
  const Elem top =
      detail::label_index(labels, j.at("top").get<std::string>(), "top");

  const bool has_covers = j.contains("covers");
  const bool has_tables = j.contains("meet") || j.contains("join");
  if (has_covers == has_tables)
    throw FormatError("provide either \"covers\" or both \"meet\" and \"join\"");

  if (has_covers) {
    CoverRelation cov;
    cov.universe_size = n;
    cov.labels = labels;
    for (const auto& pair : j.at("covers")) {
      if (!pair.is_array() || pair.size() != 2)
        throw FormatError("covers entries must be [lower, upper] pairs");
      cov.covers.emplace_back(
          detail::label_index(labels, pair.at(0).get<std::string>(), "covers"),
          detail::label_index(labels, pair.at(1).get<std::string>(), "covers"));
    }
    FiniteAlgebra a =
        FiniteAlgebra::from_covers(cov, std::move(arrow), std::move(neg));
    if (a.bottom() != bottom)
      throw FormatError("declared bottom \"" + labels[bottom] +
                        "\" is not the least element");
    if (a.top() != top)
      throw FormatError("declared top \"" + labels[top] +
                        "\" is not the greatest element");
    return a;
  }

  if (!j.contains("meet") || !j.contains("join"))
    throw FormatError("provide either \"covers\" or both \"meet\" and \"join\"");
  std::vector<Elem> meet = detail::parse_table(j.at("meet"), n, labels, "meet");
  std::vector<Elem> join = detail::parse_table(j.at("join"), n, labels, "join");
  return FiniteAlgebra::from_tables(std::move(labels), std::move(meet),
                                    std::move(join), std::move(arrow),
                                    std::move(neg), bottom, top);
}

// Covering pairs recovered from the order; sorted for stable output.
inline std::vector<std::pair<Elem, Elem>> cover_pairs(const FiniteAlgebra& a) {
  const int n = a.size();
  std::vector<std::pair<Elem, Elem>> covers;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (x == y || !a.leq(x, y)) continue;
      bool direct = true;
      for (Elem z = 0; z < n && direct; ++z)
        if (z != x && z != y && a.leq(x, z) && a.leq(z, y)) direct = false;
      if (direct) covers.emplace_back(x, y);
    }
  return covers;
}

inline Json algebra_to_json(const FiniteAlgebra& a) {
  Json j;
  j["labels"] = a.labels();
  Json covers = Json::array();
  for (const auto& [lo, hi] : cover_pairs(a))
    covers.push_back(Json::array({a.label(lo), a.label(hi)}));
  j["covers"] = covers;
  Json arrow = Json::array();
  for (int x = 0; x < a.size(); ++x) {
    Json row = Json::array();
    for (int y = 0; y < a.size(); ++y) row.push_back(a.label(a.arrow(x, y)));
    arrow.push_back(row);
  }
  j["arrow"] = arrow;
  Json neg = Json::array();
  for (int x = 0; x < a.size(); ++x) neg.push_back(a.label(a.neg(x)));
  j["neg"] = neg;
  j["bottom"] = a.label(a.bottom());
  j["top"] = a.label(a.top());
  return j;
}

// Accepts plain algebra files and single corpus lines (objects wrapping the
// algebra under an "algebra" key, as written by the enumerate export).
inline FiniteAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open \"" + path + "\"");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid JSON in \"" + path + "\": " + e.what());
  }
  if (j.is_object() && j.contains("algebra")) return algebra_from_json(j.at("algebra"));
  return algebra_from_json(j);
}

// Corpus files: one algebra per line, as exported by enumerate.
inline std::vector<FiniteAlgebra> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open \"" + path + "\"");
  std::vector<FiniteAlgebra> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("invalid corpus line in \"" + path + "\": " + e.what());
    }
    out.push_back(algebra_from_json(j.is_object() && j.contains("algebra")
                                        ? j.at("algebra")
                                        : j));
  }
  return out;
}

inline Json outcome_to_json(const CheckOutcome& out, const FiniteAlgebra& a) {
  Json j;
  j["verdict"] = out.pass ? "pass" : "fail";
  if (!out.pass) {
    Json asg;
    for (const auto& [var, el] : out.assignment.binding)
      asg[var] = a.label(el);
    j["assignment"] = asg;
    j["lhs"] = a.label(out.lhs_value);
    j["rhs"] = a.label(out.rhs_value);
  }
  return j;
}

inline Json level_to_json(const LevelResult& level) {
  Json j;
  if (level.exact)
    j["exactly"] = level.n;
  else
    j["exceeds"] = level.n;
  return j;
}

inline Json report_to_json(const ClassificationReport& rep) {
  Json j;
  Json m;
  for (const auto& [name, value] : rep.memberships) m[name] = value;
  j["memberships"] = m;
  j["level"] = level_to_json(rep.level);
  return j;
}

}  // namespace shkit
