#pragma once

#include <string>
#include <vector>

#include "tecss/graph.hpp"
#include "tecss/rational.hpp"

namespace tecss {

// One edge exchange applied to the working cover, with the accounting on
// both sides.
struct MoveRecord {
  std::string stage;  // canonicalize, bridge_cover, glue
  std::string rule;
  EdgeSet added;
  EdgeSet removed;
  int size_before = 0;
  int size_after = 0;
  int components_before = 0;
  int components_after = 0;
  int bridges_before = 0;
  int bridges_after = 0;
  Rational cost_before{0};
  Rational cost_after{0};
  bool coarsening = true;
  bool canonical_after = true;
  std::string canonical_detail;  // first violated property, if any
  // Set when the move came from a search fallback rather than a direct
  // construction, or when canonicalization had to accept a cost increase.
  bool flagged = false;
  std::string note;
};

// Counters for the runtime checks of the structural guarantees the gluing
// and bridge-covering stages rely on. Any failure or fired branch is a bug
// signal; the counterexample graphs are kept in `counterexamples`.
struct Monitors {
  long long matching_checks = 0;
  long long matching_failures = 0;
  long long ham_pair_checks = 0;
  long long ham_pair_failures = 0;
  long long shortcut_checks = 0;
  long long shortcut_failures = 0;
  long long impossible_branches = 0;
  long long reachable_checks = 0;
  long long reachable_failures = 0;
  long long fallback_moves = 0;
  // Cheap bridge-covering paths existed but every one broke a canonical
  // property, so the step went straight to the fallback search.
  long long cheap_rejections = 0;
  long long canonical_stalls = 0;
  std::vector<std::string> counterexamples;

  bool clean() const {
    return matching_failures == 0 && ham_pair_failures == 0 && shortcut_failures == 0 &&
           impossible_branches == 0 && reachable_failures == 0 && canonical_stalls == 0;
  }
  void merge(const Monitors& o);
};

struct SolveTrace {
  std::vector<MoveRecord> moves;
  Monitors monitors;
};

}  // namespace tecss
