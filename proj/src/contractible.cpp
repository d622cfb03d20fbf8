#include <algorithm>

#include "tecss/exact.hpp"

namespace tecss {

namespace {

std::vector<int> internal_edge_indices(const Graph& g, const std::vector<char>& in_w) {
  std::vector<int> out;
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge_at(i);
    if (!e.is_loop() && in_w[e.u] && in_w[e.v]) out.push_back(i);
  }
  return out;
}

// 2EC test of G[W] for |W| <= 16 using bitmasks over local indices.
bool small_induced_2ec(const std::vector<std::pair<int, int>>& local_edges, int k) {
  if (k <= 1) return true;
  auto connected_without = [&](int skip) {
    std::vector<unsigned> adj(k, 0);
    for (int i = 0; i < static_cast<int>(local_edges.size()); ++i) {
      if (i == skip) continue;
      adj[local_edges[i].first] |= 1u << local_edges[i].second;
      adj[local_edges[i].second] |= 1u << local_edges[i].first;
    }
    unsigned seen = 1, frontier = 1;
    while (frontier) {
      unsigned next = 0;
      for (int x = 0; x < k; ++x)
        if (frontier >> x & 1) next |= adj[x];
      next &= ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == (1u << k) - 1;
  };
  if (!connected_without(-1)) return false;
  for (int i = 0; i < static_cast<int>(local_edges.size()); ++i)
    if (!connected_without(i)) return false;
  return true;
}

}  // namespace

std::optional<int> min_internal_edges(const Graph& g, const VertexSet& w, BudgetClock& clock) {
  if (!is_2ec(g)) return std::nullopt;
  std::vector<char> in_w(g.num_vertices(), 0);
  for (Vertex x : w) in_w[x] = 1;
  SubsetSearch s;
  s.g = &g;
  s.forced.assign(g.num_edges(), 0);
  s.free_edges = internal_edge_indices(g, in_w);
  std::vector<char> is_free(g.num_edges(), 0);
  for (int i : s.free_edges) is_free[i] = 1;
  for (int i = 0; i < g.num_edges(); ++i)
    if (!is_free[i] && !g.edge_at(i).is_loop()) s.forced[i] = 1;
  s.need.assign(g.num_vertices(), g.num_vertices() > 1 ? 2 : 0);
  s.superset_ok = [&g](const std::vector<char>& r) { return is_2ec_mask(g, r); };
  s.accept = s.superset_ok;
  auto res = minimum_subset(s, clock);
  if (!res) return std::nullopt;
  return static_cast<int>(res->size());
}

bool is_alpha_contractible(const Graph& g, const EdgeSet& c, const Rational& alpha) {
  if (c.empty()) return false;
  VertexSet w;
  for (EdgeId id : c) {
    w.push_back(g.edge(id).u);
    w.push_back(g.edge(id).v);
  }
  w = make_set(w);
  std::vector<Vertex> local;
  Graph gw = induced_subgraph(g, w, &local);
  if (!is_2ec_subset(gw, c)) return false;
  BudgetClock clock(OracleBudget{});
  auto k = min_internal_edges(g, w, clock);
  if (!k) return false;
  return static_cast<long long>(*k) * alpha.numerator() >= static_cast<long long>(c.size()) * alpha.denominator();
}

namespace {

struct ContractibleFinder {
  const Graph& g;
  Rational alpha;
  int cap;
  long long budget;
  ContractibleSearchStats stats;
  std::optional<EdgeSet> found;
  std::vector<char> in_sub;
  std::vector<int> local_of;
  BudgetClock clock{OracleBudget{}};

  ContractibleFinder(const Graph& graph, Rational a, int c, long long b)
      : g(graph), alpha(a), cap(c), budget(b), in_sub(graph.num_vertices(), 0), local_of(graph.num_vertices(), -1) {}

  // Returns true once a contractible subgraph has been found.
  bool examine(const VertexSet& sub) {
    if (++stats.sets_enumerated > budget) throw BudgetExhausted("contractible-subgraph enumeration budget exhausted");
    int k = static_cast<int>(sub.size());
    // the whole vertex set is never a useful contraction
    if (k < 2 || k == g.num_vertices()) return false;
    for (int i = 0; i < k; ++i) local_of[sub[i]] = i;
    std::vector<std::pair<int, int>> local_edges;
    for (Vertex x : sub)
      for (const auto& inc : g.incident(x))
        if (local_of[inc.nbr] >= 0 && x < inc.nbr) local_edges.push_back({local_of[x], local_of[inc.nbr]});
    for (Vertex x : sub) local_of[x] = -1;
    if (static_cast<int>(local_edges.size()) < k || !small_induced_2ec(local_edges, k)) return false;
    ++stats.sets_2ec;
    // Greedy upper bound on the internal edges a 2EC spanning subgraph needs.
    std::vector<char> in_w(g.num_vertices(), 0);
    for (Vertex x : sub) in_w[x] = 1;
    std::vector<int> internal = internal_edge_indices(g, in_w);
    std::vector<char> alive(g.num_edges(), 1);
    int ub = static_cast<int>(internal.size());
    for (int i : internal) {
      alive[i] = 0;
      if (is_2ec_mask(g, alive)) --ub;
      else alive[i] = 1;
    }
    // opt(G[W]) >= |W| for |W| >= 3, so ub * alpha < |W| rules W out.
    long long lb_opt = k >= 3 ? k : 2;
    if (static_cast<long long>(ub) * alpha.numerator() < lb_opt * alpha.denominator()) return false;
    ++stats.exact_checks;
    VertexSet sorted = sub;
    std::sort(sorted.begin(), sorted.end());
    Graph gw = induced_subgraph(g, sorted);
    OracleBudget ob;
    ob.vertex_cap = 64;
    EdgeSet opt_w = min_2ecss(gw, ob);
    auto kk = min_internal_edges(g, sorted, clock);
    if (!kk) return false;
    if (static_cast<long long>(*kk) * alpha.numerator() >= static_cast<long long>(opt_w.size()) * alpha.denominator()) {
      found = opt_w;
      return true;
    }
    return false;
  }

  // ESU enumeration: each connected set containing `root` as its smallest
  // vertex is produced once.
  bool extend(VertexSet& sub, std::vector<Vertex> ext, Vertex root) {
    if (examine(sub)) return true;
    if (static_cast<int>(sub.size()) == cap) return false;
    while (!ext.empty()) {
      Vertex w = ext.front();
      ext.erase(ext.begin());
      std::vector<Vertex> next = ext;
      for (const auto& inc : g.incident(w)) {
        Vertex y = inc.nbr;
        if (y <= root || in_sub[y] || y == w) continue;
        // exclusive neighbourhood: not in or adjacent to the current set
        bool near = false;
        for (const auto& inc2 : g.incident(y))
          if (in_sub[inc2.nbr]) {
            near = true;
            break;
          }
        if (near) continue;
        if (std::find(next.begin(), next.end(), y) == next.end()) next.push_back(y);
      }
      sub.push_back(w);
      in_sub[w] = 1;
      bool done = extend(sub, next, root);
      in_sub[w] = 0;
      sub.pop_back();
      if (done) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<EdgeSet> find_contractible_subgraph(const Graph& g, const Rational& alpha, long long set_budget,
                                                  ContractibleSearchStats* stats) {
  if (alpha <= Rational(1)) throw std::invalid_argument("alpha must exceed 1");
  int cap = static_cast<int>(floor_of(Rational(2) / (alpha - Rational(1))));
  cap = std::min(cap, 16);
  ContractibleFinder f(g, alpha, cap, set_budget);
  for (Vertex root = 0; root < g.num_vertices() && !f.found; ++root) {
    VertexSet sub{root};
    f.in_sub[root] = 1;
    std::vector<Vertex> ext;
    for (const auto& inc : g.incident(root))
      if (inc.nbr > root && std::find(ext.begin(), ext.end(), inc.nbr) == ext.end()) ext.push_back(inc.nbr);
    f.extend(sub, ext, root);
    f.in_sub[root] = 0;
  }
  if (stats) *stats = f.stats;
  return f.found;
}

}  // namespace tecss
