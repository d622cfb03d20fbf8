#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "tecss/graph.hpp"
#include "tecss/rational.hpp"

namespace tecss {

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  int vertex_cap = 16;
  double time_cap_seconds = 0;  // 0: unlimited
  long long node_cap = 0;       // 0: unlimited
};

// Tracks node count and wall clock against an OracleBudget.
class BudgetClock {
 public:
  explicit BudgetClock(const OracleBudget& b)
      : budget_(b), start_(std::chrono::steady_clock::now()) {}
  // Throws BudgetExhausted once a cap is passed.
  void tick();
  long long nodes() const { return nodes_; }

 private:
  OracleBudget budget_;
  std::chrono::steady_clock::time_point start_;
  long long nodes_ = 0;
};

// ---- generic minimum subset search ----
// Finds the lexicographically smallest minimum-size set F of `free` edges
// (edge indices of g) such that accept(forced + F) holds. `superset_ok` must
// be monotone: when false for R, no subset of R is acceptable.
struct SubsetSearch {
  const Graph* g = nullptr;
  std::vector<char> forced;     // by edge index
  std::vector<int> free_edges;  // edge indices, ascending id
  std::vector<int> need;        // degree lower bound per vertex
  std::function<bool(const std::vector<char>&)> superset_ok;
  std::function<bool(const std::vector<char>&)> accept;
  int start_k = 0;  // lower bound on |F| (free edges only)
  int max_k = -1;   // -1: |free_edges|
};
// Returns chosen free edge indices, or nullopt if no set exists.
std::optional<std::vector<int>> minimum_subset(const SubsetSearch& spec, BudgetClock& clock);

// ---- 2ECSS ----
// Minimum 2EC spanning subgraph; lexicographically smallest among minima.
// Loops are never used. Throws InfeasibleError / BudgetExhausted.
EdgeSet min_2ecss(const Graph& g, const OracleBudget& budget = {});
// Same with some edges forced into the solution.
EdgeSet min_2ecss_forced(const Graph& g, const EdgeSet& forced, const OracleBudget& budget = {});

// ---- triangle-free 2-edge covers and 2-matchings ----
// Maximum simple 2-matching (degree <= 2, no parallel use) honouring the
// excluded edges; returns its edge ids.
EdgeSet max_simple_2matching(const Graph& g, const std::vector<char>& excluded_index);
// Minimum 2-edge cover that ignores the triangle condition, as a lower bound.
int min_2edge_cover_size(const Graph& g);
// True if some component of h (given as edge set over g) is a triangle.
std::optional<VertexSet> triangle_component(const Graph& g, const EdgeSet& h);

// Minimum triangle-free 2-edge cover containing forced.
EdgeSet min_tf2ec(const Graph& g, const EdgeSet& forced, const OracleBudget& budget = {});
// Maximum triangle-free 2-matching.
EdgeSet max_tf2matching(const Graph& g, const OracleBudget& budget = {});
bool check_cover_matching_identity(const Graph& g, const OracleBudget& budget = {});

// ---- contractibility ----
// Minimum number of edges of G[w] that, added to G minus E(G[w]), give a
// 2EC spanning subgraph. nullopt if G itself is not 2EC.
std::optional<int> min_internal_edges(const Graph& g, const VertexSet& w, BudgetClock& clock);
bool is_alpha_contractible(const Graph& g, const EdgeSet& c, const Rational& alpha);

struct ContractibleSearchStats {
  long long sets_enumerated = 0;
  long long sets_2ec = 0;
  long long exact_checks = 0;
};
// Some alpha-contractible subgraph on at most floor(2/(alpha-1)) vertices.
// Throws BudgetExhausted if the enumeration budget runs out.
std::optional<EdgeSet> find_contractible_subgraph(const Graph& g, const Rational& alpha,
                                                  long long set_budget = 50'000'000,
                                                  ContractibleSearchStats* stats = nullptr);

// ---- 2-cut types ----
enum class TypeClass { A, B, C, Invalid };
std::string to_string(TypeClass t);
// h spans V(gi); u, v vertices of gi.
TypeClass classify_type(const Graph& gi, const EdgeSet& h, Vertex u, Vertex v);
// Minimum spanning subgraph of g1 of exactly type t. Defined-ness against
// the other side g2 (same u, v labels there): type C needs g2 to be 2EC,
// type B needs g2 + uv to be 2EC.
std::optional<EdgeSet> opt_type(const Graph& g1, Vertex u, Vertex v, TypeClass t, const Graph* g2 = nullptr,
                                Vertex u2 = -1, Vertex v2 = -1, const OracleBudget& budget = {});
// min over subgraphs of type A or B (H + uv is 2EC).
std::optional<EdgeSet> opt_type_ab(const Graph& g1, Vertex u, Vertex v, const OracleBudget& budget = {});

}  // namespace tecss
