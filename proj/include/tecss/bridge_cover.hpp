#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tecss/cover.hpp"
#include "tecss/graph.hpp"
#include "tecss/rational.hpp"
#include "tecss/trace.hpp"

namespace tecss {

// The contraction G_C of a complex component C: every 2EC block of C, every
// vertex of C outside all blocks (lonely), and every other component of the
// cover become single nodes. Nodes 0..tc_size-1 form the bridge tree T_C,
// ordered by smallest vertex; the other components follow.
struct TcTree {
  int component = -1;  // index into analyze_cover(g, s).components
  int tc_size = 0;
  std::vector<int> node_of;          // vertex -> node
  std::vector<VertexSet> members;    // node -> vertices
  std::vector<char> is_block;        // tree node: block (1) or lonely (0)
  EdgeSet tc_edges;                  // the bridges of C
  std::vector<std::vector<std::pair<int, EdgeId>>> tree_adj;   // over tree nodes
  std::vector<std::vector<std::pair<int, EdgeId>>> cross_adj;  // G-edges not in E(T_C) between distinct nodes

  int num_nodes() const { return static_cast<int>(members.size()); }
  bool in_tree(int node) const { return node < tc_size; }
};

// Throws std::invalid_argument if the component has no bridge.
TcTree build_tc(const Graph& g, const EdgeSet& s, int component);

// Tree nodes outside w joined to w by a bridge-covering path: a path in
// G_C minus E(T_C) with both ends in T_C and every internal node outside T_C.
std::vector<int> reachable(const TcTree& tc, const std::vector<int>& w);

// A bridge-covering path from some node of w to target, as G-edges.
std::optional<EdgeSet> covering_path(const TcTree& tc, const std::vector<int>& w, int target);

// Bridges and block nodes on the tree path between two tree nodes
// (block count includes the endpoints).
std::pair<int, int> tree_path_counts(const TcTree& tc, int a, int b);
// br/4 + bl - 2 >= 0
bool is_cheap(int bridges, int blocks);

struct BridgeCoverMove {
  std::string rule;
  EdgeSet added;
  EdgeSet removed;
  Rational cost_delta{0};  // cost before minus cost after
  bool fallback = false;
  std::string note;
};

// Cheap bridge-covering paths in (node, node) order, as moves.
std::vector<BridgeCoverMove> cheap_paths(const Graph& g, const EdgeSet& s, const TcTree& tc);
// First of cheap_paths.
std::optional<BridgeCoverMove> find_cheap_path(const Graph& g, const EdgeSet& s, const TcTree& tc);

// One bridge-eliminating move on the given complex component. Throws
// std::runtime_error when neither the case analysis nor the fallback search
// yields a valid move.
BridgeCoverMove cover_step(const Graph& g, const EdgeSet& s, int component, Monitors* monitors = nullptr);

// Applies moves until every component is 2EC.
CanonicalCover cover_all(const Graph& g, const CanonicalCover& s, SolveTrace* trace = nullptr);

}  // namespace tecss
