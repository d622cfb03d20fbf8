#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <limits>

#include "tecss/exact.hpp"

namespace tecss {

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

// Max simple 2-matching by Edmonds on the standard gadget: two copies per
// vertex, an edge xy becomes e_x - e_y with e_x joined to both copies of x.
// Returns indices of the matched edges of g.
std::vector<int> two_matching_indices(const Graph& g, const std::vector<char>& excluded) {
  int n = g.num_vertices();
  std::vector<int> used;
  for (int i = 0; i < g.num_edges(); ++i)
    if (!excluded[i] && !g.edge_at(i).is_loop()) used.push_back(i);
  int total = 2 * n + 2 * static_cast<int>(used.size());
  BoostGraph bg(total);
  for (size_t j = 0; j < used.size(); ++j) {
    const Edge& e = g.edge_at(used[j]);
    int a = 2 * n + 2 * static_cast<int>(j), b = a + 1;
    boost::add_edge(2 * e.u, a, bg);
    boost::add_edge(2 * e.u + 1, a, bg);
    boost::add_edge(a, b, bg);
    boost::add_edge(b, 2 * e.v, bg);
    boost::add_edge(b, 2 * e.v + 1, bg);
  }
  std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> mate(total);
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  const auto none = boost::graph_traits<BoostGraph>::null_vertex();
  std::vector<int> out;
  for (size_t j = 0; j < used.size(); ++j) {
    int a = 2 * n + 2 * static_cast<int>(j), b = a + 1;
    if (mate[a] != none && static_cast<int>(mate[a]) < 2 * n && mate[b] != none && static_cast<int>(mate[b]) < 2 * n)
      out.push_back(used[j]);
  }
  return out;
}

}  // namespace

EdgeSet max_simple_2matching(const Graph& g, const std::vector<char>& excluded_index) {
  EdgeSet out;
  for (int i : two_matching_indices(g, excluded_index)) out.push_back(g.edge_at(i).id);
  return make_set(out);
}

int min_2edge_cover_size(const Graph& g) {
  std::vector<char> none(g.num_edges(), 0);
  return 2 * g.num_vertices() - static_cast<int>(two_matching_indices(g, none).size());
}

std::optional<VertexSet> triangle_component(const Graph& g, const EdgeSet& h) {
  std::vector<char> alive(g.num_edges(), 0);
  for (EdgeId id : h) alive[g.index_of(id)] = 1;
  int count = 0;
  auto label = component_labels_mask(g, alive, &count);
  std::vector<int> vcount(count, 0), ecount(count, 0);
  for (int x : label) ++vcount[x];
  for (EdgeId id : h) ++ecount[label[g.edge(id).u]];
  for (int c = 0; c < count; ++c) {
    if (vcount[c] != 3 || ecount[c] != 3) continue;
    VertexSet vs;
    for (Vertex x = 0; x < g.num_vertices(); ++x)
      if (label[x] == c) vs.push_back(x);
    // three edges on three vertices form a triangle unless some pair repeats
    std::vector<std::pair<int, int>> pairs;
    for (EdgeId id : h) {
      const Edge& e = g.edge(id);
      if (label[e.u] == c) pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end()) return vs;
  }
  return std::nullopt;
}

namespace {

// Relaxed node of the triangle-free cover search: forced edges are
// subdivided, excluded edges deleted, and the minimum 2-edge cover of the
// resulting graph is built from a maximum 2-matching.
struct CoverRelaxation {
  bool feasible = false;
  EdgeSet cover;  // ids of g
};

CoverRelaxation relax_cover(const Graph& g, const std::vector<char>& forced, const std::vector<char>& excluded) {
  int n = g.num_vertices();
  Graph h(n);
  std::vector<int> orig;  // h edge index -> g edge index
  for (int i = 0; i < g.num_edges(); ++i) {
    if (excluded[i] || g.edge_at(i).is_loop()) continue;
    const Edge& e = g.edge_at(i);
    if (forced[i]) {
      Vertex c = h.add_vertex();
      h.add_edge(e.u, c);
      h.add_edge(c, e.v);
      orig.push_back(i);
      orig.push_back(i);
    } else {
      h.add_edge(e.u, e.v);
      orig.push_back(i);
    }
  }
  CoverRelaxation r;
  for (Vertex x = 0; x < h.num_vertices(); ++x)
    if (h.degree(x) < 2) return r;
  std::vector<char> none(h.num_edges(), 0);
  std::vector<char> in(h.num_edges(), 0);
  std::vector<int> deg(h.num_vertices(), 0);
  for (int i : two_matching_indices(h, none)) {
    in[i] = 1;
    ++deg[h.edge_at(i).u];
    ++deg[h.edge_at(i).v];
  }
  // Greedy completion; each added edge has exactly one deficient end, so
  // the cover has 2|V| - |M| edges. Joining different components first keeps
  // triangles from forming where possible.
  std::vector<int> comp = component_labels_mask(h, in);
  for (Vertex x = 0; x < h.num_vertices(); ++x) {
    while (deg[x] < 2) {
      int pick = -1;
      for (const auto& inc : h.incident(x)) {
        if (in[inc.index]) continue;
        if (pick < 0) pick = inc.index;
        if (comp[inc.nbr] != comp[x]) {
          pick = inc.index;
          break;
        }
      }
      in[pick] = 1;
      ++deg[h.edge_at(pick).u];
      ++deg[h.edge_at(pick).v];
      int from = comp[h.edge_at(pick).other(x)], to = comp[x];
      if (from != to)
        for (int& c : comp)
          if (c == from) c = to;
    }
  }
  r.feasible = true;
  for (int i = 0; i < h.num_edges(); ++i)
    if (in[i]) r.cover.push_back(g.edge_at(orig[i]).id);
  r.cover = make_set(r.cover);
  return r;
}

struct TfCoverSearch {
  const Graph& g;
  BudgetClock& clock;
  std::optional<EdgeSet> best;

  void run(std::vector<char>& forced, std::vector<char>& excluded) {
    clock.tick();
    CoverRelaxation r = relax_cover(g, forced, excluded);
    if (!r.feasible) return;
    if (best && r.cover.size() >= best->size()) return;
    auto tri = triangle_component(g, r.cover);
    if (!tri) {
      best = r.cover;
      return;
    }
    // options: exclude a triangle edge, else keep the triangle and add an
    // edge leaving it; branches are made disjoint by fixing earlier options.
    struct Option {
      int index;
      bool exclude;
    };
    std::vector<Option> opts;
    std::vector<char> in_tri(g.num_vertices(), 0);
    for (Vertex x : *tri) in_tri[x] = 1;
    std::vector<int> tri_edges;
    for (EdgeId id : r.cover) {
      int i = g.index_of(id);
      if (in_tri[g.edge_at(i).u]) tri_edges.push_back(i);
    }
    for (int i : tri_edges)
      if (!forced[i]) opts.push_back({i, true});
    for (int i = 0; i < g.num_edges(); ++i) {
      const Edge& e = g.edge_at(i);
      if (e.is_loop() || excluded[i] || forced[i]) continue;
      if (in_tri[e.u] != in_tri[e.v]) opts.push_back({i, false});
    }
    std::vector<std::pair<int, char>> undo_f, undo_x;
    for (size_t k = 0; k < opts.size(); ++k) {
      const Option& o = opts[k];
      if (o.exclude) {
        excluded[o.index] = 1;
        run(forced, excluded);
        excluded[o.index] = 0;
        forced[o.index] = 1;  // later branches keep this edge
        undo_f.push_back({o.index, 0});
      } else {
        forced[o.index] = 1;
        run(forced, excluded);
        forced[o.index] = 0;
        excluded[o.index] = 1;
        undo_x.push_back({o.index, 0});
      }
    }
    for (auto [i, v] : undo_f) forced[i] = v;
    for (auto [i, v] : undo_x) excluded[i] = v;
  }
};

}  // namespace

EdgeSet min_tf2ec(const Graph& g, const EdgeSet& forced_ids, const OracleBudget& budget) {
  std::vector<char> forced(g.num_edges(), 0), excluded(g.num_edges(), 0);
  for (EdgeId id : forced_ids) {
    int i = g.index_of(id);
    if (i < 0) throw std::invalid_argument("min_tf2ec: forced edge not in graph");
    forced[i] = 1;
  }
  BudgetClock clock(budget);
  TfCoverSearch s{g, clock, std::nullopt};
  s.run(forced, excluded);
  if (!s.best) throw InfeasibleError("no triangle-free 2-edge cover exists");
  return *s.best;
}

namespace {

struct TfMatchingSearch {
  const Graph& g;
  BudgetClock& clock;
  std::optional<EdgeSet> best;

  void run(std::vector<char>& excluded) {
    clock.tick();
    EdgeSet m = max_simple_2matching(g, excluded);
    if (best && m.size() <= best->size()) return;
    auto tri = triangle_component(g, m);
    if (!tri) {
      best = m;
      return;
    }
    for (EdgeId id : m) {
      int i = g.index_of(id);
      const Edge& e = g.edge_at(i);
      if (!std::binary_search(tri->begin(), tri->end(), e.u)) continue;
      excluded[i] = 1;
      run(excluded);
      excluded[i] = 0;
    }
  }
};

}  // namespace

EdgeSet max_tf2matching(const Graph& g, const OracleBudget& budget) {
  std::vector<char> excluded(g.num_edges(), 0);
  BudgetClock clock(budget);
  TfMatchingSearch s{g, clock, std::nullopt};
  s.run(excluded);
  return s.best ? *s.best : EdgeSet{};
}

bool check_cover_matching_identity(const Graph& g, const OracleBudget& budget) {
  EdgeSet h = min_tf2ec(g, {}, budget);
  EdgeSet m = max_tf2matching(g, budget);
  return static_cast<int>(h.size()) == 2 * g.num_vertices() - static_cast<int>(m.size());
}

}  // namespace tecss
