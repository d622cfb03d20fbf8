#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tecss/cover.hpp"
#include "tecss/graph.hpp"
#include "tecss/rational.hpp"
#include "tecss/trace.hpp"

namespace tecss {

// The component graph of a bridgeless cover with its 2VC blocks, node
// locality and the anchor: a large component inside the block with the
// smallest minimum node id among blocks that contain a large component.
struct GlueContext {
  const Graph* host = nullptr;  // must outlive the context
  ComponentGraph cg;
  std::vector<VcBlock> blocks;
  std::vector<char> non_local;     // node is a cut vertex of the component graph
  std::vector<int> size;           // node -> edges of its component
  std::vector<char> is_cycle;      // node -> component is a cycle
  std::vector<Rational> credit;    // node -> credit of its component
  std::vector<std::vector<int>> blocks_of;  // node -> indices of blocks containing it
  int anchor = -1;
  int anchor_block = -1;  // -1 when the cover has a single component

  int num_nodes() const { return cg.ghat.num_vertices(); }
  bool is_large(int node) const { return size[node] >= 8; }
};

// Throws std::invalid_argument if some component has a bridge or no large
// component exists while there are several components.
GlueContext make_glue_context(const Graph& g, const EdgeSet& s);

struct GlueMove {
  std::string rule;
  EdgeSet added;
  EdgeSet removed;
  std::vector<int> merged;  // component-graph nodes whose components were joined
  Rational cost_delta{0};   // cost before minus cost after
  bool fallback = false;
  std::string note;
};

// Three G-edges forming a matching between the vertices of the components
// in `side` and those of the other components of the block.
std::optional<EdgeSet> local_3_matching(const Graph& g, const GlueContext& ctx, int block, const std::vector<int>& side);

// Pairs {u, v} (u < v) of vertices of the cycle component, both with a
// neighbour outside it, joined by a Hamiltonian path of g[cycle].
std::vector<std::pair<Vertex, Vertex>> hamiltonian_pairs(const Graph& g, const VertexSet& cycle);
// Guaranteed count on structured graphs: 2 for cycles up to 6 edges, 1 for 7.
int hamiltonian_pair_guarantee(int cycle_length);

// A cycle of the block given as component-graph nodes and G-edges; the
// attachment vertices of a node are the ends of its two cycle edges inside
// the node's component.
std::pair<Vertex, Vertex> attachments(const GlueContext& ctx, const Cycle& f, int position);

// Cycle through c1 and c2 meeting two distinct vertices of each, one of
// them u1 in c1 and u2 in c2.
std::optional<Cycle> nice_cycle(const GlueContext& ctx, int block, int c1, int c2, Vertex u1, Vertex u2);
// Cycle through c1 and c2 meeting u1 and one more vertex of c1, with at
// least min(3, |V(B)|) nodes.
std::optional<Cycle> cycle_size3(const GlueContext& ctx, int block, int c1, int c2, Vertex u1);

struct ShortcutCycle {
  Cycle cycle;
  Vertex u1 = -1;
  Vertex v1 = -1;
  std::vector<Vertex> ham_path;  // Hamiltonian u1,v1-path of g[V(c1)]
};
// Cycle through c1 (a 4-cycle or local 5-cycle) and c2 meeting distinct
// vertices of both, u2 among those of c2 (u2 = -1: any), such that c1's
// attachments are joined by a Hamiltonian path.
std::optional<ShortcutCycle> shortcut_c4_local_c5(const Graph& g, const GlueContext& ctx, int block, int c1, int c2,
                                                  Vertex u2 = -1);

// Edge e of the cycle (vertex order) such that f minus e stays 2EC, chosen by
// the distance rule from two attachment pairs that are joined by paths of f
// outside the cycle. The choice is checked by a direct 2EC test;
// recheck_failed reports a rule choice that failed it.
std::optional<EdgeId> shortcut_edge(const Graph& g, const EdgeSet& f, const std::vector<Vertex>& cycle,
                                    std::pair<Vertex, Vertex> a1, std::pair<Vertex, Vertex> a2,
                                    bool* recheck_failed = nullptr);

// Moves. Each returns a verified move or nothing: the result has only 2EC
// components, fewer components, no higher cost, and stays canonical.
std::optional<GlueMove> glue_adjacent(const Graph& g, const EdgeSet& s, const GlueContext& ctx, int c1);
std::optional<GlueMove> glue_c4_local_c5(const Graph& g, const EdgeSet& s, const GlueContext& ctx, int c1);
std::optional<GlueMove> glue_nonlocal_c5(const Graph& g, const EdgeSet& s, const GlueContext& ctx, int c1,
                                         Monitors* monitors = nullptr);
std::optional<GlueMove> glue_c6_c7(const Graph& g, const EdgeSet& s, const GlueContext& ctx, int c1,
                                   Monitors* monitors = nullptr);

// One merging move. Throws std::runtime_error if nothing applies.
GlueMove glue_step(const Graph& g, const EdgeSet& s, Monitors* monitors = nullptr);

// Merges until a single 2EC spanning component remains.
CanonicalCover glue_all(const Graph& g, const CanonicalCover& s, SolveTrace* trace = nullptr);

}  // namespace tecss
