#include "tecss/graph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace tecss {

// ---------------------------------------------------------------- Graph

Vertex Graph::add_vertex() {
  adj_.emplace_back();
  return num_vertices() - 1;
}

EdgeId Graph::add_edge(Vertex u, Vertex v) {
  EdgeId id = next_id_;
  add_edge(u, v, id);
  return id;
}

void Graph::add_edge(Vertex u, Vertex v, EdgeId id) {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
    throw std::invalid_argument("edge endpoint out of range");
  if (id < next_id_) throw std::invalid_argument("edge ids must be added in ascending order");
  int index = num_edges();
  edges_.push_back({u, v, id});
  index_.emplace(id, index);
  adj_[u].push_back({v, index});
  if (u != v) adj_[v].push_back({u, index});
  next_id_ = id + 1;
}

int Graph::index_of(EdgeId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

const Edge& Graph::edge(EdgeId id) const {
  int i = index_of(id);
  if (i < 0) throw std::out_of_range("unknown edge id " + std::to_string(id));
  return edges_[i];
}

int Graph::degree(Vertex v) const {
  int d = 0;
  for (const auto& inc : adj_[v])
    if (inc.nbr != v) ++d;
  return d;
}

EdgeSet Graph::edge_ids() const {
  EdgeSet out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.id);
  return out;
}

bool Graph::is_simple() const {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : edges_) {
    if (e.is_loop()) return false;
    pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

std::optional<EdgeId> Graph::edge_between(Vertex u, Vertex v) const {
  std::optional<EdgeId> best;
  for (const auto& inc : adj_[u])
    if (inc.nbr == v) {
      EdgeId id = edges_[inc.index].id;
      if (!best || id < *best) best = id;
    }
  return best;
}

// ---------------------------------------------------------------- sets

EdgeSet make_set(std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EdgeSet set_difference(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EdgeSet set_intersection(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

// ---------------------------------------------------------------- construction

Graph subgraph(const Graph& g, const EdgeSet& s) {
  Graph h(g.num_vertices());
  for (const auto& e : g.edges())
    if (contains(s, e.id)) h.add_edge(e.u, e.v, e.id);
  return h;
}

Graph induced_subgraph(const Graph& g, const VertexSet& w, std::vector<Vertex>* to_local) {
  std::vector<Vertex> local(g.num_vertices(), -1);
  for (size_t i = 0; i < w.size(); ++i) local[w[i]] = static_cast<Vertex>(i);
  Graph h(static_cast<int>(w.size()));
  for (const auto& e : g.edges())
    if (local[e.u] >= 0 && local[e.v] >= 0) h.add_edge(local[e.u], local[e.v], e.id);
  if (to_local) *to_local = std::move(local);
  return h;
}

Contraction contract(const Graph& g, const VertexSet& w) {
  if (w.empty()) throw std::invalid_argument("contract: empty vertex set");
  std::vector<char> in_w(g.num_vertices(), 0);
  for (Vertex x : w) in_w[x] = 1;
  Contraction c;
  c.vmap.assign(g.num_vertices(), -1);
  int next = 0, wnode = -1;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (in_w[x]) {
      if (wnode < 0) wnode = next++;
      c.vmap[x] = wnode;
    } else {
      c.vmap[x] = next++;
    }
  }
  c.graph = Graph(next);
  for (const auto& e : g.edges()) {
    Vertex a = c.vmap[e.u], b = c.vmap[e.v];
    if (a != b) c.graph.add_edge(a, b, e.id);
  }
  return c;
}

// ---------------------------------------------------------------- connectivity

std::vector<int> component_labels_mask(const Graph& g, const std::vector<char>& alive, int* count) {
  int n = g.num_vertices();
  std::vector<int> label(n, -1);
  std::vector<Vertex> stack;
  int c = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const auto& inc : g.incident(x)) {
        if (!alive[inc.index] || label[inc.nbr] >= 0) continue;
        label[inc.nbr] = c;
        stack.push_back(inc.nbr);
      }
    }
    ++c;
  }
  if (count) *count = c;
  return label;
}

std::vector<int> component_labels(const Graph& g, int* count) {
  return component_labels_mask(g, std::vector<char>(g.num_edges(), 1), count);
}

bool is_connected(const Graph& g) {
  int c = 0;
  component_labels(g, &c);
  return c <= 1;
}

namespace {

// Iterative lowpoint DFS. Collects bridge indices; with stop_early the
// search ends at the first bridge found.
struct BridgeSearch {
  const Graph& g;
  const std::vector<char>& alive;
  std::vector<int> tin, low;
  std::vector<int> found;
  int visited = 0;

  BridgeSearch(const Graph& graph, const std::vector<char>& a)
      : g(graph), alive(a), tin(graph.num_vertices(), -1), low(graph.num_vertices(), 0) {}

  // returns false when stopped early
  bool run_from(Vertex root, bool stop_early) {
    struct Frame {
      Vertex v;
      int parent_edge;
      size_t it;
    };
    std::vector<Frame> st;
    int timer = visited;
    tin[root] = low[root] = timer++;
    ++visited;
    st.push_back({root, -1, 0});
    while (!st.empty()) {
      Frame& f = st.back();
      const auto& inc = g.incident(f.v);
      if (f.it < inc.size()) {
        const Incidence ic = inc[f.it++];
        if (!alive[ic.index] || ic.index == f.parent_edge || ic.nbr == f.v) continue;
        if (tin[ic.nbr] < 0) {
          tin[ic.nbr] = low[ic.nbr] = timer++;
          ++visited;
          st.push_back({ic.nbr, ic.index, 0});
        } else {
          low[f.v] = std::min(low[f.v], tin[ic.nbr]);
        }
      } else {
        Frame done = f;
        st.pop_back();
        if (!st.empty()) {
          Vertex p = st.back().v;
          low[p] = std::min(low[p], low[done.v]);
          if (low[done.v] > tin[p]) {
            found.push_back(done.parent_edge);
            if (stop_early) return false;
          }
        }
      }
    }
    return true;
  }
};

}  // namespace

std::vector<int> bridge_indices_mask(const Graph& g, const std::vector<char>& alive) {
  BridgeSearch bs(g, alive);
  for (Vertex s = 0; s < g.num_vertices(); ++s)
    if (bs.tin[s] < 0) bs.run_from(s, false);
  std::sort(bs.found.begin(), bs.found.end());
  return bs.found;
}

bool is_2ec_mask(const Graph& g, const std::vector<char>& alive) {
  if (g.num_vertices() <= 1) return true;
  BridgeSearch bs(g, alive);
  if (!bs.run_from(0, true)) return false;
  return bs.visited == g.num_vertices();
}

EdgeSet bridges(const Graph& g) {
  std::vector<char> alive(g.num_edges(), 1);
  EdgeSet out;
  for (int idx : bridge_indices_mask(g, alive)) out.push_back(g.edge_at(idx).id);
  return make_set(out);
}

bool is_2ec(const Graph& g) { return is_2ec_mask(g, std::vector<char>(g.num_edges(), 1)); }

bool is_2ec_subset(const Graph& g, const EdgeSet& s) {
  std::vector<char> alive(g.num_edges(), 0);
  for (EdgeId id : s) {
    int i = g.index_of(id);
    if (i < 0) return false;
    alive[i] = 1;
  }
  return is_2ec_mask(g, alive);
}

VertexSet cut_vertices(const Graph& g) {
  int n = g.num_vertices();
  std::vector<int> tin(n, -1), low(n, 0);
  std::vector<char> is_cut(n, 0);
  int timer = 0;
  struct Frame {
    Vertex v;
    int parent_edge;
    size_t it;
    int children;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (tin[root] >= 0) continue;
    std::vector<Frame> st;
    tin[root] = low[root] = timer++;
    st.push_back({root, -1, 0, 0});
    while (!st.empty()) {
      Frame& f = st.back();
      const auto& inc = g.incident(f.v);
      if (f.it < inc.size()) {
        const Incidence ic = inc[f.it++];
        if (ic.index == f.parent_edge || ic.nbr == f.v) continue;
        if (tin[ic.nbr] < 0) {
          tin[ic.nbr] = low[ic.nbr] = timer++;
          ++f.children;
          st.push_back({ic.nbr, ic.index, 0, 0});
        } else {
          low[f.v] = std::min(low[f.v], tin[ic.nbr]);
        }
      } else {
        Frame done = f;
        st.pop_back();
        if (st.empty()) {
          if (done.children >= 2) is_cut[done.v] = 1;
        } else {
          Frame& p = st.back();
          low[p.v] = std::min(low[p.v], low[done.v]);
          if (st.size() >= 2 && low[done.v] >= tin[p.v]) is_cut[p.v] = 1;
        }
      }
    }
  }
  VertexSet out;
  for (Vertex v = 0; v < n; ++v)
    if (is_cut[v]) out.push_back(v);
  return out;
}

bool is_2vc(const Graph& g) {
  return g.num_vertices() >= 3 && is_connected(g) && cut_vertices(g).empty();
}

BlockDecomposition two_ec_blocks(const Graph& g, const EdgeSet& s) {
  std::vector<char> alive(g.num_edges(), 0);
  for (EdgeId id : s) alive[g.index_of(id)] = 1;
  BlockDecomposition bd;
  for (int idx : bridge_indices_mask(g, alive)) {
    bd.bridges.push_back(g.edge_at(idx).id);
    alive[idx] = 0;
  }
  bd.bridges = make_set(bd.bridges);
  bd.class_of = component_labels_mask(g, alive, &bd.num_classes);
  std::vector<int> size(bd.num_classes, 0);
  for (int c : bd.class_of) ++size[c];
  bd.block_of_class.assign(bd.num_classes, -1);
  for (int c = 0; c < bd.num_classes; ++c)
    if (size[c] >= 2) {
      bd.block_of_class[c] = static_cast<int>(bd.block_vertices.size());
      bd.block_vertices.emplace_back();
      bd.block_edges.emplace_back();
    }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    int b = bd.block_of_class[bd.class_of[v]];
    if (b >= 0) bd.block_vertices[b].push_back(v);
  }
  for (int i = 0; i < g.num_edges(); ++i) {
    if (!alive[i] || g.edge_at(i).is_loop()) continue;
    int b = bd.block_of_class[bd.class_of[g.edge_at(i).u]];
    bd.block_edges[b].push_back(g.edge_at(i).id);
  }
  return bd;
}

std::vector<VcBlock> biconnected_blocks(const Graph& g) {
  int n = g.num_vertices();
  std::vector<int> tin(n, -1), low(n, 0);
  std::vector<int> estack;
  std::vector<VcBlock> out;
  int timer = 0;
  struct Frame {
    Vertex v;
    int parent_edge;
    size_t it;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (tin[root] >= 0) continue;
    std::vector<Frame> st;
    tin[root] = low[root] = timer++;
    st.push_back({root, -1, 0});
    while (!st.empty()) {
      Frame& f = st.back();
      const auto& inc = g.incident(f.v);
      if (f.it < inc.size()) {
        const Incidence ic = inc[f.it++];
        if (ic.index == f.parent_edge || ic.nbr == f.v) continue;
        if (tin[ic.nbr] < 0) {
          estack.push_back(ic.index);
          tin[ic.nbr] = low[ic.nbr] = timer++;
          st.push_back({ic.nbr, ic.index, 0});
        } else if (tin[ic.nbr] < tin[f.v]) {
          estack.push_back(ic.index);
          low[f.v] = std::min(low[f.v], tin[ic.nbr]);
        }
      } else {
        Frame done = f;
        st.pop_back();
        if (st.empty()) continue;
        Vertex p = st.back().v;
        low[p] = std::min(low[p], low[done.v]);
        if (low[done.v] >= tin[p]) {
          VcBlock b;
          while (true) {
            int idx = estack.back();
            estack.pop_back();
            b.edges.push_back(g.edge_at(idx).id);
            b.vertices.push_back(g.edge_at(idx).u);
            b.vertices.push_back(g.edge_at(idx).v);
            if (idx == done.parent_edge) break;
          }
          b.edges = make_set(b.edges);
          b.vertices = make_set(b.vertices);
          out.push_back(std::move(b));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const VcBlock& a, const VcBlock& b) { return a.edges < b.edges; });
  return out;
}

int components_without(const Graph& g, Vertex a, Vertex b, std::vector<int>* sizes) {
  int n = g.num_vertices();
  std::vector<char> seen(n, 0);
  seen[a] = seen[b] = 1;
  std::vector<Vertex> stack;
  int count = 0;
  if (sizes) sizes->clear();
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.push_back(s);
    int sz = 0;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      ++sz;
      for (const auto& inc : g.incident(x))
        if (!seen[inc.nbr]) {
          seen[inc.nbr] = 1;
          stack.push_back(inc.nbr);
        }
    }
    ++count;
    if (sizes) sizes->push_back(sz);
  }
  return count;
}

std::vector<TwoCut> two_vertex_cuts(const Graph& g) {
  std::vector<TwoCut> out;
  std::vector<int> sizes;
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v = u + 1; v < g.num_vertices(); ++v) {
      int c = components_without(g, u, v, &sizes);
      if (c < 2) continue;
      bool iso = c == 2 && (sizes[0] == 1 || sizes[1] == 1);
      out.push_back({u, v, iso, c});
    }
  return out;
}

std::optional<EdgeId> find_irrelevant_edge(const Graph& g) {
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    if (components_without(g, e.u, e.v) >= 2) return e.id;
  }
  return std::nullopt;
}

ComponentGraph component_graph(const Graph& g, const EdgeSet& s) {
  std::vector<char> alive(g.num_edges(), 0);
  for (EdgeId id : s) alive[g.index_of(id)] = 1;
  if (!bridge_indices_mask(g, alive).empty())
    throw std::invalid_argument("component_graph: subgraph has a bridge");
  ComponentGraph cg;
  int count = 0;
  cg.vmap = component_labels_mask(g, alive, &count);
  cg.members.assign(count, {});
  cg.comp_edges.assign(count, {});
  for (Vertex v = 0; v < g.num_vertices(); ++v) cg.members[cg.vmap[v]].push_back(v);
  cg.ghat = Graph(count);
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge_at(i);
    int a = cg.vmap[e.u], b = cg.vmap[e.v];
    if (alive[i]) cg.comp_edges[a].push_back(e.id);
    else if (a != b) cg.ghat.add_edge(a, b, e.id);
  }
  return cg;
}

std::optional<std::vector<Vertex>> hamiltonian_path(const Graph& g, const VertexSet& w, Vertex u, Vertex v) {
  int k = static_cast<int>(w.size());
  if (k > 8) throw std::invalid_argument("hamiltonian_path: vertex set exceeds cap of 8");
  auto pos = [&](Vertex x) {
    auto it = std::find(w.begin(), w.end(), x);
    return it == w.end() ? -1 : static_cast<int>(it - w.begin());
  };
  int su = pos(u), sv = pos(v);
  if (su < 0 || sv < 0) throw std::invalid_argument("hamiltonian_path: endpoints outside vertex set");
  if (su == sv) return k == 1 ? std::optional<std::vector<Vertex>>(std::vector<Vertex>{u}) : std::nullopt;
  std::vector<unsigned> adj(k, 0);
  for (int i = 0; i < k; ++i)
    for (const auto& inc : g.incident(w[i])) {
      int j = pos(inc.nbr);
      if (j >= 0 && j != i) adj[i] |= 1u << j;
    }
  int full = (1 << k) - 1;
  // pred[mask][x]: previous vertex on a path from su covering mask ending at x; -2 unreachable
  std::vector<std::vector<int>> pred(1 << k, std::vector<int>(k, -2));
  pred[1 << su][su] = -1;
  for (int mask = 0; mask <= full; ++mask)
    for (int x = 0; x < k; ++x) {
      if (pred[mask][x] == -2 || x == sv) continue;
      for (int y = 0; y < k; ++y) {
        if (!(adj[x] >> y & 1) || (mask >> y & 1)) continue;
        int nm = mask | (1 << y);
        if (pred[nm][y] == -2) pred[nm][y] = x;
      }
    }
  if (pred[full][sv] == -2) return std::nullopt;
  std::vector<Vertex> path;
  int mask = full, x = sv;
  while (x != -1) {
    path.push_back(w[x]);
    int p = pred[mask][x];
    mask &= ~(1 << x);
    x = p;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

int max_cross_matching(const Graph& g, const VertexSet& v1, const VertexSet& v2, EdgeSet* out) {
  int n = g.num_vertices();
  std::vector<int> side(n, 0);
  for (Vertex x : v1) side[x] = 1;
  for (Vertex x : v2) side[x] = 2;
  std::vector<int> match_edge(n, -1);  // right vertex -> edge index
  std::vector<int> left_edge(n, -1);
  std::vector<int> stamp(n, -1);
  int size = 0;
  std::function<bool(Vertex, int)> augment = [&](Vertex x, int round) -> bool {
    for (const auto& inc : g.incident(x)) {
      Vertex y = inc.nbr;
      if (side[y] != 2 || stamp[y] == round) continue;
      stamp[y] = round;
      int me = match_edge[y];
      if (me < 0 || augment(g.edge_at(me).other(y), round)) {
        match_edge[y] = inc.index;
        left_edge[x] = inc.index;
        return true;
      }
    }
    return false;
  };
  int round = 0;
  for (Vertex x : v1)
    if (augment(x, round++)) ++size;
  if (out) {
    out->clear();
    for (Vertex y : v2)
      if (match_edge[y] >= 0) out->push_back(g.edge_at(match_edge[y]).id);
    *out = make_set(*out);
  }
  return size;
}

std::optional<EdgeSet> find_cross_matching(const Graph& g, const VertexSet& v1, const VertexSet& v2, int k) {
  EdgeSet m;
  if (max_cross_matching(g, v1, v2, &m) >= k) return m;
  return std::nullopt;
}

namespace {

// Unit-capacity flow on a vertex-split network.
struct SplitFlow {
  struct Arc {
    int to;
    int cap;
    int rev;
    int edge_index;  // -1 for internal/sink arcs
    int orig;
  };
  std::vector<std::vector<Arc>> arcs;
  int sink;
  explicit SplitFlow(int n) : arcs(2 * n + 1), sink(2 * n) {}
  static int in(Vertex v) { return 2 * v; }
  static int out(Vertex v) { return 2 * v + 1; }
  void add(int a, int b, int cap, int edge_index) {
    arcs[a].push_back({b, cap, static_cast<int>(arcs[b].size()), edge_index, cap});
    arcs[b].push_back({a, 0, static_cast<int>(arcs[a].size()) - 1, edge_index, 0});
  }
  bool augment(int s) {
    std::vector<std::pair<int, int>> parent(arcs.size(), {-1, -1});
    std::deque<int> q{s};
    parent[s] = {s, -1};
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int i = 0; i < static_cast<int>(arcs[x].size()); ++i) {
        const Arc& a = arcs[x][i];
        if (a.cap <= 0 || parent[a.to].first >= 0) continue;
        parent[a.to] = {x, i};
        q.push_back(a.to);
      }
    }
    if (parent[sink].first < 0) return false;
    for (int y = sink; y != s;) {
      auto [x, i] = parent[y];
      Arc& a = arcs[x][i];
      a.cap -= 1;
      arcs[y][a.rev].cap += 1;
      y = x;
    }
    return true;
  }
};

SplitFlow build_split(const Graph& h, Vertex source, const std::vector<char>& blocked) {
  SplitFlow f(h.num_vertices());
  for (Vertex v = 0; v < h.num_vertices(); ++v)
    if (v != source && !blocked[v]) f.add(SplitFlow::in(v), SplitFlow::out(v), 1, -1);
  for (int i = 0; i < h.num_edges(); ++i) {
    const Edge& e = h.edge_at(i);
    if (e.is_loop() || blocked[e.u] || blocked[e.v]) continue;
    f.add(SplitFlow::out(e.u), SplitFlow::in(e.v), 1, i);
    f.add(SplitFlow::out(e.v), SplitFlow::in(e.u), 1, i);
  }
  return f;
}

// Follows one unit of flow from the source out-node to the sink.
Path extract_path(const Graph& h, SplitFlow& f, Vertex source) {
  Path p;
  p.nodes.push_back(source);
  int x = SplitFlow::out(source);
  while (x != f.sink) {
    bool moved = false;
    for (auto& a : f.arcs[x]) {
      if (a.orig <= 0 || a.cap >= a.orig) continue;
      a.cap += 1;
      if (a.edge_index >= 0) {
        p.edges.push_back(h.edge_at(a.edge_index).id);
        p.nodes.push_back(a.to / 2);
      }
      x = a.to;
      moved = true;
      break;
    }
    if (!moved) throw std::logic_error("flow decomposition failed");
  }
  return p;
}

}  // namespace

Cycle cycle_through_two(const Graph& b, Vertex x, Vertex y) {
  if (x == y) throw std::invalid_argument("cycle_through_two: x == y");
  std::vector<char> blocked(b.num_vertices(), 0);
  SplitFlow f = build_split(b, x, blocked);
  f.add(SplitFlow::in(y), f.sink, 2, -1);
  int src = SplitFlow::out(x);
  if (!f.augment(src) || !f.augment(src)) throw std::invalid_argument("cycle_through_two: no two disjoint paths");
  Path p1 = extract_path(b, f, x);
  Path p2 = extract_path(b, f, x);
  Cycle c;
  c.nodes = p1.nodes;
  c.edges = p1.edges;
  for (int i = static_cast<int>(p2.nodes.size()) - 2; i >= 1; --i) c.nodes.push_back(p2.nodes[i]);
  for (int i = static_cast<int>(p2.edges.size()) - 1; i >= 0; --i) c.edges.push_back(p2.edges[i]);
  return c;
}

std::optional<std::pair<Path, Path>> fan_to_two(const Graph& h, Vertex x, Vertex a, Vertex b,
                                                 const std::vector<char>& avoid) {
  if (a == b || a == x || b == x) return std::nullopt;
  SplitFlow f = build_split(h, x, avoid);
  // a and b end paths; they are not traversed.
  for (Vertex t : {a, b}) {
    for (auto& arc : f.arcs[SplitFlow::in(t)])
      if (arc.to == SplitFlow::out(t)) arc.cap = 0;
    f.add(SplitFlow::in(t), f.sink, 1, -1);
  }
  int src = SplitFlow::out(x);
  if (!f.augment(src) || !f.augment(src)) return std::nullopt;
  Path p1 = extract_path(h, f, x);
  Path p2 = extract_path(h, f, x);
  if (p1.nodes.back() != a) std::swap(p1, p2);
  return std::make_pair(p1, p2);
}

std::optional<Path> path_avoiding(const Graph& h, const VertexSet& sources, const VertexSet& targets,
                                  const VertexSet& avoid) {
  int n = h.num_vertices();
  std::vector<char> bad(n, 0), tgt(n, 0);
  for (Vertex v : avoid) bad[v] = 1;
  for (Vertex v : targets) tgt[v] = 1;
  std::vector<int> pedge(n, -1);
  std::vector<Vertex> pnode(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<Vertex> q;
  for (Vertex s : sources) {
    if (bad[s] || seen[s]) continue;
    if (tgt[s]) return Path{{s}, {}};
    seen[s] = 1;
    q.push_back(s);
  }
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    for (const auto& inc : h.incident(x)) {
      Vertex y = inc.nbr;
      if (seen[y] || bad[y]) continue;
      seen[y] = 1;
      pnode[y] = x;
      pedge[y] = inc.index;
      if (tgt[y]) {
        Path p;
        for (Vertex z = y; z != -1; z = pnode[z]) {
          p.nodes.push_back(z);
          if (pedge[z] >= 0) p.edges.push_back(h.edge_at(pedge[z]).id);
        }
        std::reverse(p.nodes.begin(), p.nodes.end());
        std::reverse(p.edges.begin(), p.edges.end());
        return p;
      }
      q.push_back(y);
    }
  }
  return std::nullopt;
}

std::string describe(const Graph& g) {
  std::ostringstream os;
  os << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) os << "e " << e.u << ' ' << e.v << "  # id " << e.id << '\n';
  return os.str();
}

}  // namespace tecss
