#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shkit/algebra.hpp"
#include "shkit/catalog.hpp"
#include "shkit/term.hpp"

namespace shkit {

constexpr int kDefaultLevelBound = 6;

// Exactly(n) or ExceedsBound(bound tried).
struct LevelResult {
  bool exact = false;
  int n = 0;

  static LevelResult exactly(int n) { return {true, n}; }
  static LevelResult exceeds(int bound) { return {false, bound}; }

  bool operator==(const LevelResult& o) const {
    return exact == o.exact && n == o.n;
  }
  std::string to_string() const {
    return exact ? std::to_string(n) : "exceeds " + std::to_string(n);
  }
};

// Smallest n <= max_n whose level identity L_n holds, else ExceedsBound.
inline LevelResult level(const FiniteAlgebra& a, int max_n = kDefaultLevelBound,
                         int threads = 1) {
  for (int n = 0; n <= max_n; ++n)
    if (check(a, level_identity(n), nullptr, threads).pass)
      return LevelResult::exactly(n);
  return LevelResult::exceeds(max_n);
}

// Level through the alternate characterization: L'_n holding first at n
// corresponds to level n+1.  Level 0 has no L' form, so it is probed with
// L_0 directly.
inline LevelResult level_alt(const FiniteAlgebra& a,
                             int max_n = kDefaultLevelBound, int threads = 1) {
  for (int n = 0; n <= max_n; ++n) {
    const Identity id = n == 0 ? level_identity(0) : level_identity_alt(n - 1);
    if (check(a, id, nullptr, threads).pass) return LevelResult::exactly(n);
  }
  return LevelResult::exceeds(max_n);
}

// Named variety memberships plus the computed level.  Composite varieties
// are conjunctions of catalog checks.
struct ClassificationReport {
  std::vector<std::pair<std::string, bool>> memberships;
  LevelResult level;

  bool member(const std::string& name) const {
    for (const auto& [k, v] : memberships)
      if (k == name) return v;
    return false;
  }
};

inline ClassificationReport classify(const FiniteAlgebra& a,
                                     int max_level = kDefaultLevelBound,
                                     int threads = 1) {
  auto holds = [&](const char* name) {
    return check(a, *find_identity(name), nullptr, threads).pass;
  };
  const bool sh = holds("SH1") && holds("SH2") && holds("SH3");
  const bool h = holds("H");
  const bool st = holds("St");
  const bool dqd = sh && holds("DQDa1") && holds("DQDa2") && holds("DQDb") &&
                   holds("DQDc") && holds("DQDd");
  const bool dm = dqd && holds("DM");
  const bool jdm = holds("JDM");
  const bool bdm = holds("BDM");
  const bool bvariant = holds("B");
  const bool regular = dqd && holds("R");
  const bool lee = holds("Lee");

  ClassificationReport rep;
  rep.memberships = {
      {"SH", sh},
      {"H", sh && h},
      {"St", sh && st},
      {"DQD", dqd},
      {"DM", dm},
      {"Dms", dqd && jdm},
      {"BDQD", dqd && bdm},
      {"B", dqd && bvariant},
      {"Regular", regular},
      {"Lee", dqd && lee},
      {"DQDSt", dqd && st},
      {"DMSt", dm && st},
      {"DmsSt", dqd && jdm && st},
      {"BDQDSt", dqd && bdm && st},
      {"DmsL", dqd && jdm && lee},
  };
  rep.level = level(a, max_level, threads);
  return rep;
}

}  // namespace shkit
