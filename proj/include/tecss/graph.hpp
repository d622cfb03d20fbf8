#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tecss {

using Vertex = int;
using EdgeId = int;
// Sorted, duplicate-free lists.
using EdgeSet = std::vector<EdgeId>;
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u;
  Vertex v;
  EdgeId id;
  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool is_loop() const { return u == v; }
};

struct Incidence {
  Vertex nbr;
  int index;  // position in Graph::edges()
};

// Undirected multigraph on vertices 0..n-1. Edge ids are stable across
// subgraph and contraction operations and kept in ascending order.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  Vertex add_vertex();
  EdgeId add_edge(Vertex u, Vertex v);
  // id must exceed every id already present.
  void add_edge(Vertex u, Vertex v, EdgeId id);

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge_at(int index) const { return edges_[index]; }
  int index_of(EdgeId id) const;
  bool has_edge(EdgeId id) const { return index_of(id) >= 0; }
  const Edge& edge(EdgeId id) const;
  const std::vector<Incidence>& incident(Vertex v) const { return adj_[v]; }
  // Loops are ignored.
  int degree(Vertex v) const;
  EdgeSet edge_ids() const;
  bool is_simple() const;
  std::optional<EdgeId> edge_between(Vertex u, Vertex v) const;
  EdgeId max_id() const { return next_id_ - 1; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
  std::unordered_map<EdgeId, int> index_;
  EdgeId next_id_ = 0;
};

// ---- edge/vertex set helpers ----
EdgeSet make_set(std::vector<int> xs);
EdgeSet set_union(const EdgeSet& a, const EdgeSet& b);
EdgeSet set_difference(const EdgeSet& a, const EdgeSet& b);
EdgeSet set_intersection(const EdgeSet& a, const EdgeSet& b);
bool contains(const std::vector<int>& sorted, int x);

// ---- construction ----
// Same vertex set, only the edges in s.
Graph subgraph(const Graph& g, const EdgeSet& s);

// Induced subgraph on w relabelled to 0..|w|-1 in the order of w.
// to_local (size n) receives -1 for vertices outside w.
Graph induced_subgraph(const Graph& g, const VertexSet& w, std::vector<Vertex>* to_local = nullptr);

struct Contraction {
  Graph graph;
  std::vector<Vertex> vmap;  // old vertex -> new vertex
};
// w becomes a single vertex; the remaining vertices keep their relative order.
Contraction contract(const Graph& g, const VertexSet& w);

// ---- connectivity ----
// Component label per vertex; labels are numbered by smallest vertex.
std::vector<int> component_labels(const Graph& g, int* count = nullptr);
// Same, restricted to edges whose index has alive[index] != 0.
std::vector<int> component_labels_mask(const Graph& g, const std::vector<char>& alive, int* count = nullptr);
bool is_connected(const Graph& g);
EdgeSet bridges(const Graph& g);
bool is_2ec(const Graph& g);
// Edge-index mask variants used in inner loops.
bool is_2ec_mask(const Graph& g, const std::vector<char>& alive);
std::vector<int> bridge_indices_mask(const Graph& g, const std::vector<char>& alive);
bool is_2ec_subset(const Graph& g, const EdgeSet& s);

VertexSet cut_vertices(const Graph& g);
bool is_2vc(const Graph& g);

struct BlockDecomposition {
  std::vector<VertexSet> block_vertices;
  std::vector<EdgeSet> block_edges;
  EdgeSet bridges;
  // 2-edge-connected class of every vertex; a vertex touching no
  // non-bridge edge forms a class of its own.
  std::vector<int> class_of;
  int num_classes = 0;
  // block index of each class, or -1 for singleton classes
  std::vector<int> block_of_class;
};
BlockDecomposition two_ec_blocks(const Graph& g, const EdgeSet& s);

// 2-vertex-connected blocks (edge partition) of a multigraph.
struct VcBlock {
  VertexSet vertices;
  EdgeSet edges;
};
std::vector<VcBlock> biconnected_blocks(const Graph& g);

struct TwoCut {
  Vertex u;
  Vertex v;
  bool isolating;
  int components;
};
std::vector<TwoCut> two_vertex_cuts(const Graph& g);
int components_without(const Graph& g, Vertex a, Vertex b, std::vector<int>* sizes = nullptr);
std::optional<EdgeId> find_irrelevant_edge(const Graph& g);

struct ComponentGraph {
  Graph ghat;                       // node per component, crossing edges keep their ids
  std::vector<int> vmap;            // vertex of g -> node
  std::vector<VertexSet> members;   // node -> vertices
  std::vector<EdgeSet> comp_edges;  // node -> edges of s inside it
};
// Throws std::invalid_argument if some component of s has a bridge.
ComponentGraph component_graph(const Graph& g, const EdgeSet& s);

// Bitmask DP, |w| <= 8.
std::optional<std::vector<Vertex>> hamiltonian_path(const Graph& g, const VertexSet& w, Vertex u, Vertex v);

// Maximum matching among edges with one end in v1 and the other in v2;
// returned only if it has at least k edges.
std::optional<EdgeSet> find_cross_matching(const Graph& g, const VertexSet& v1, const VertexSet& v2, int k);
int max_cross_matching(const Graph& g, const VertexSet& v1, const VertexSet& v2, EdgeSet* out = nullptr);

struct Path {
  std::vector<Vertex> nodes;
  std::vector<EdgeId> edges;
};
struct Cycle {
  std::vector<Vertex> nodes;  // cyclic order
  std::vector<EdgeId> edges;  // edges[i] joins nodes[i] and nodes[i+1 mod k]
};
// Two internally disjoint x,y-paths in a 2VC multigraph.
Cycle cycle_through_two(const Graph& b, Vertex x, Vertex y);
// Vertex-disjoint paths (except at x) from x to two distinct targets a, b,
// avoiding `avoid`. Used for cycles constrained at a third node.
std::optional<std::pair<Path, Path>> fan_to_two(const Graph& h, Vertex x, Vertex a, Vertex b,
                                                 const std::vector<char>& avoid);

std::optional<Path> path_avoiding(const Graph& h, const VertexSet& sources, const VertexSet& targets,
                                  const VertexSet& avoid);

std::string describe(const Graph& g);

}  // namespace tecss
