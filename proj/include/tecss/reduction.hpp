#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tecss/exact.hpp"
#include "tecss/graph.hpp"
#include "tecss/rational.hpp"

namespace tecss {

// Solver for structured instances; must return a 2EC spanning subgraph
// (edge ids of its argument).
using StructuredSolver = std::function<EdgeSet(const Graph&)>;

struct ReductionStep {
  std::string rule;  // brute_force, one_cut, parallel_loop, irrelevant, contract,
                     // two_cut_both_big, two_cut_type_C, two_cut_type_AB, dispatch_alg
  int depth = 0;
  int n = 0;
  int m = 0;
  EdgeSet patch;    // F for the 2-cut branches, removed edges for deletions
  std::string note;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

struct ReduceOptions {
  Rational alpha{5, 4};
  OracleBudget budget;  // for the brute-force base cases
  long long contract_budget = 50'000'000;
};

struct ReduceResult {
  EdgeSet edges;
  ReductionTrace trace;
};

// Throws InfeasibleError if g is not 2EC.
ReduceResult reduce(const Graph& g, const StructuredSolver& alg, const ReduceOptions& opt = {});

struct CutPartition {
  Vertex u = -1;
  Vertex v = -1;
  VertexSet v1;
  VertexSet v2;
};
CutPartition partition_non_isolating(const Graph& g, Vertex u, Vertex v);

// One non-isolating 2-cut step: both sides big, type C, or type A/B. The
// sub-instances recurse through reduce. Steps are appended to trace.
EdgeSet handle_two_cut(const Graph& g, const CutPartition& cut, const StructuredSolver& alg,
                       const ReduceOptions& opt = {}, ReductionTrace* trace = nullptr);

// Minimum 2EC spanning subgraph of g assembled from type optima of the two
// sides of a non-isolating 2-cut (g simple, 2VC, no irrelevant edges).
EdgeSet opt_across_cut(const Graph& g, const CutPartition& cut, const OracleBudget& budget);

struct StructuredVerdict {
  bool structured = false;
  std::string reason;  // empty when structured
  std::optional<EdgeId> edge;
  std::optional<std::pair<Vertex, Vertex>> cut;
  std::optional<EdgeSet> subgraph;
};
StructuredVerdict is_structured(const Graph& g, const Rational& alpha, long long contract_budget = 50'000'000);

// floor(max(4/(alpha-1), 5)) and floor(2/(alpha-1)).
int brute_force_threshold(const Rational& alpha);
int contract_threshold(const Rational& alpha);
// ceil(4/(alpha-1)): minimum size of a structured graph.
int structured_min_vertices(const Rational& alpha);

}  // namespace tecss
