#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tecss/exact.hpp"
#include "tecss/graph.hpp"
#include "tecss/rational.hpp"
#include "tecss/trace.hpp"

namespace tecss {

enum class ComponentKind { small_cycle, large, complex, other };
std::string to_string(ComponentKind k);

struct CoverComponent {
  VertexSet vertices;
  EdgeSet edges;
  EdgeSet bridges;
  std::vector<EdgeSet> blocks;  // 2EC blocks with at least one edge
  bool is_cycle = false;
  // small_cycle: bridgeless cycle with < 8 edges; large: bridgeless with
  // >= 8 edges; complex: has a bridge; other: bridgeless non-cycle < 8 edges.
  ComponentKind kind = ComponentKind::other;
};

// Connected components of (V, s) that contain at least one edge, ordered by
// smallest vertex.
struct CoverStructure {
  std::vector<CoverComponent> components;
  std::vector<int> component_of;  // vertex -> component index, -1 if untouched
  int num_bridges = 0;
};
CoverStructure analyze_cover(const Graph& g, const EdgeSet& s);

struct CreditLedger {
  std::vector<Rational> component_credits;  // indexed like CoverStructure::components
  std::vector<std::pair<EdgeSet, Rational>> block_credits;
  std::vector<std::pair<EdgeId, Rational>> bridge_credits;
  Rational total{0};
};
CreditLedger credits(const Graph& g, const EdgeSet& s);
CreditLedger credits(const CoverStructure& st);
// |s| + total credits.
Rational cost(const Graph& g, const EdgeSet& s);

struct CanonicalCheck {
  bool ok = true;
  int property = 0;  // first violated property, 1..5
  int component = -1;
  std::string detail;
};
// Requires s to be a 2-edge cover of g (checked; reported as property 0).
CanonicalCheck check_canonical(const Graph& g, const EdgeSet& s);
CanonicalCheck check_canonical(const Graph& g, const EdgeSet& s, const CoverStructure& st);

bool is_2edge_cover(const Graph& g, const EdgeSet& s);
bool is_triangle_free_cover(const Graph& g, const EdgeSet& s);
// Every component of `before` lies inside one component of `after`.
bool is_coarsening(const Graph& g, const EdgeSet& before, const EdgeSet& after);

struct CanonicalCover {
  EdgeSet edges;
  CreditLedger ledger;
  std::vector<ComponentKind> classification;
};
CanonicalCover make_canonical_cover(const Graph& g, const EdgeSet& s);

MoveRecord make_move_record(const Graph& g, const std::string& stage, const std::string& rule, const EdgeSet& before,
                            const EdgeSet& after);

// ---- guesses ----

// Every 7-edge tree of g spanning 8 vertices, each once, in a fixed order:
// connected vertex sets by ESU from the smallest vertex, then the spanning
// trees of the induced subgraph by include-first edge-id recursion. The
// visitor returns false to stop. Returns the number of guesses visited.
long long enumerate_guesses(const Graph& g, const std::function<bool(const EdgeSet&)>& visit);

// Minimum triangle-free 2-edge cover of g containing f. Throws
// InfeasibleError when none exists.
EdgeSet initial_cover(const Graph& g, const EdgeSet& f, const OracleBudget& budget = {});

// ---- canonicalization ----

struct CanonicalizeOptions {
  // Cap on improving exchanges; hitting it counts as a stall.
  int max_moves = 100000;
};

// Improving exchanges until the cover is canonical. Each exchange keeps a
// triangle-free 2-edge cover, is a coarsening, never grows the cover and
// strictly decreases (size, components, bridges) lexicographically. Moves are
// appended to trace. Throws std::runtime_error if the search stalls on a
// non-canonical cover.
CanonicalCover canonicalize(const Graph& g, const EdgeSet& h, SolveTrace* trace = nullptr,
                            const CanonicalizeOptions& opt = {});

}  // namespace tecss
