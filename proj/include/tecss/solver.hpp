#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tecss/cover.hpp"
#include "tecss/exact.hpp"
#include "tecss/graph.hpp"
#include "tecss/rational.hpp"
#include "tecss/reduction.hpp"
#include "tecss/trace.hpp"

namespace tecss {

struct SolveOptions {
  Rational alpha{5, 4};
  OracleBudget budget;  // brute-force base cases of the reduction
  long long contract_budget = 50'000'000;
  // 0 tries every guess; otherwise stop after this many (not certified).
  long long max_guesses = 0;
  // Stop at the first guess whose pipeline completes (not certified).
  bool first_feasible = false;
  // Keep trying guesses until this many ran, even after the lower bound is
  // met. Audits use it to push more guesses through the pipeline.
  long long min_guesses = 0;
  // Re-run the structuredness test on every dispatched graph and record it.
  bool check_structured = false;
};

// One guess pushed through cover, canonicalization, bridge covering and
// gluing.
struct GuessRun {
  EdgeSet guess;
  bool completed = false;
  std::string error;        // set when a stage threw
  EdgeSet cover;            // H, the minimum triangle-free cover containing the guess
  EdgeSet canonical;        // H' after canonicalization
  int cover_size = 0;       // |H|
  int canonical_size = 0;   // |H'|
  Rational canonical_cost{0};
  Rational final_cost{0};
  EdgeSet edges;            // final single 2EC component
  SolveTrace trace;
};

struct StructuredRun {
  Graph graph;  // the dispatched graph; every EdgeSet below refers to it
  int n = 0;
  int m = 0;
  EdgeSet edges;
  int best_guess = -1;  // index into runs
  std::vector<GuessRun> runs;
  long long guesses_tried = 0;
  int unconstrained_cover = 0;  // minimum triangle-free 2-edge cover, a lower bound on opt
  // Every guess was tried, or the winning guess's cover matched the
  // unconstrained minimum (so it is at most opt).
  bool certified = false;
  std::string stop_reason;
  std::optional<bool> structured;  // set when SolveOptions::check_structured
  std::string structured_reason;
};

// The approximation pipeline on one graph with at least 8 vertices, best
// over guesses. Throws std::runtime_error if no guess completes.
StructuredRun solve_structured(const Graph& g, const SolveOptions& opt = {});

struct SolveResult {
  EdgeSet edges;
  ReductionTrace reduction;
  std::vector<StructuredRun> dispatched;
  Monitors monitors;  // merged over every guess of every dispatched graph
  bool certified = true;
};

// Reduction to structured instances, with solve_structured as the
// structured solver.
SolveResult solve(const Graph& g, const SolveOptions& opt = {});

}  // namespace tecss
