#include "tecss/exact.hpp"

#include <algorithm>
#include <map>

namespace tecss {

void BudgetClock::tick() {
  ++nodes_;
  if (budget_.node_cap > 0 && nodes_ > budget_.node_cap)
    throw BudgetExhausted("oracle node cap exhausted");
  if (budget_.time_cap_seconds > 0 && (nodes_ & 1023) == 0) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (secs > budget_.time_cap_seconds) throw BudgetExhausted("oracle time cap exhausted");
  }
}

namespace {

struct SubsetDfs {
  const SubsetSearch& s;
  BudgetClock& clock;
  const Graph& g;
  std::vector<char> inc;  // forced + included
  std::vector<char> alive;  // forced + included + undecided
  std::vector<int> deg_f, deg_r;
  int deficiency = 0;
  int k = 0;
  std::vector<int> chosen;

  SubsetDfs(const SubsetSearch& spec, BudgetClock& c) : s(spec), clock(c), g(*spec.g) {}

  void reset() {
    int n = g.num_vertices();
    inc = s.forced;
    alive = s.forced;
    for (int e : s.free_edges) alive[e] = 1;
    deg_f.assign(n, 0);
    deg_r.assign(n, 0);
    for (int i = 0; i < g.num_edges(); ++i) {
      const Edge& e = g.edge_at(i);
      if (e.is_loop()) continue;
      if (inc[i]) ++deg_f[e.u], ++deg_f[e.v];
      if (alive[i]) ++deg_r[e.u], ++deg_r[e.v];
    }
    deficiency = 0;
    for (int v = 0; v < n; ++v) deficiency += std::max(0, s.need[v] - deg_f[v]);
    chosen.clear();
  }

  void add_f(Vertex x, int d) {
    int before = std::max(0, s.need[x] - deg_f[x]);
    deg_f[x] += d;
    deficiency += std::max(0, s.need[x] - deg_f[x]) - before;
  }

  bool dfs(size_t pos, int cnt) {
    clock.tick();
    if (cnt == k) return s.accept(inc);
    size_t remaining = s.free_edges.size() - pos;
    if (cnt + static_cast<int>(remaining) < k) return false;
    if (cnt + (deficiency + 1) / 2 > k) return false;
    int e = s.free_edges[pos];
    const Edge& ed = g.edge_at(e);
    inc[e] = 1;
    add_f(ed.u, 1);
    add_f(ed.v, 1);
    chosen.push_back(e);
    if (dfs(pos + 1, cnt + 1)) return true;
    chosen.pop_back();
    inc[e] = 0;
    add_f(ed.u, -1);
    add_f(ed.v, -1);

    alive[e] = 0;
    --deg_r[ed.u];
    --deg_r[ed.v];
    bool ok = deg_r[ed.u] >= s.need[ed.u] && deg_r[ed.v] >= s.need[ed.v] && s.superset_ok(alive);
    bool found = ok && dfs(pos + 1, cnt);
    alive[e] = 1;
    ++deg_r[ed.u];
    ++deg_r[ed.v];
    return found;
  }
};

}  // namespace

std::optional<std::vector<int>> minimum_subset(const SubsetSearch& spec, BudgetClock& clock) {
  SubsetDfs d(spec, clock);
  d.reset();
  for (int v = 0; v < spec.g->num_vertices(); ++v)
    if (d.deg_r[v] < spec.need[v]) return std::nullopt;
  if (!spec.superset_ok(d.alive)) return std::nullopt;
  int max_k = spec.max_k < 0 ? static_cast<int>(spec.free_edges.size()) : spec.max_k;
  for (int k = std::max(0, spec.start_k); k <= max_k; ++k) {
    d.reset();
    d.k = k;
    if (d.dfs(0, 0)) return d.chosen;
  }
  return std::nullopt;
}

namespace {

EdgeSet ids_of(const Graph& g, const std::vector<int>& idx) {
  EdgeSet out;
  for (int i : idx) out.push_back(g.edge_at(i).id);
  return make_set(out);
}

EdgeSet solve_2ecss(const Graph& g, const std::vector<char>& forced, const OracleBudget& budget) {
  int n = g.num_vertices();
  if (!is_2ec(g)) throw InfeasibleError("graph is not 2-edge-connected");
  EdgeSet forced_ids;
  for (int i = 0; i < g.num_edges(); ++i)
    if (forced[i]) forced_ids.push_back(g.edge_at(i).id);
  if (n <= 1) return forced_ids;
  SubsetSearch s;
  s.g = &g;
  s.forced = forced;
  for (int i = 0; i < g.num_edges(); ++i)
    if (!forced[i] && !g.edge_at(i).is_loop()) s.free_edges.push_back(i);
  s.need.assign(n, 2);
  s.superset_ok = [&g](const std::vector<char>& r) { return is_2ec_mask(g, r); };
  s.accept = s.superset_ok;
  int nforced = static_cast<int>(forced_ids.size());
  s.start_k = std::max(n, min_2edge_cover_size(g)) - nforced;
  BudgetClock clock(budget);
  auto res = minimum_subset(s, clock);
  if (!res) throw InfeasibleError("no 2EC spanning subgraph with the forced edges");
  return set_union(forced_ids, ids_of(g, *res));
}

}  // namespace

EdgeSet min_2ecss(const Graph& g, const OracleBudget& budget) {
  if (g.num_vertices() > budget.vertex_cap)
    throw BudgetExhausted("min_2ecss: " + std::to_string(g.num_vertices()) + " vertices exceed the oracle cap of " +
                          std::to_string(budget.vertex_cap));
  return solve_2ecss(g, std::vector<char>(g.num_edges(), 0), budget);
}

EdgeSet min_2ecss_forced(const Graph& g, const EdgeSet& forced, const OracleBudget& budget) {
  if (g.num_vertices() > budget.vertex_cap)
    throw BudgetExhausted("min_2ecss: vertex cap exceeded");
  std::vector<char> f(g.num_edges(), 0);
  for (EdgeId id : forced) f[g.index_of(id)] = 1;
  return solve_2ecss(g, f, budget);
}

// ---------------------------------------------------------------- types

std::string to_string(TypeClass t) {
  switch (t) {
    case TypeClass::A: return "A";
    case TypeClass::B: return "B";
    case TypeClass::C: return "C";
    default: return "invalid";
  }
}

TypeClass classify_type(const Graph& gi, const EdgeSet& h, Vertex u, Vertex v) {
  Graph sub = subgraph(gi, h);
  int comps = 0;
  auto label = component_labels(sub, &comps);
  if (comps == 2) {
    if (label[u] == label[v]) return TypeClass::Invalid;
    return bridges(sub).empty() ? TypeClass::C : TypeClass::Invalid;
  }
  if (comps != 1) return TypeClass::Invalid;
  BlockDecomposition bd = two_ec_blocks(gi, h);
  if (bd.bridges.empty()) return TypeClass::A;
  int cu = bd.class_of[u], cv = bd.class_of[v];
  if (cu == cv) return TypeClass::Invalid;
  // the class tree must be a path with ends cu and cv
  std::vector<int> tdeg(bd.num_classes, 0);
  for (EdgeId b : bd.bridges) {
    const Edge& e = gi.edge(b);
    ++tdeg[bd.class_of[e.u]];
    ++tdeg[bd.class_of[e.v]];
  }
  for (int c = 0; c < bd.num_classes; ++c) {
    int want = (c == cu || c == cv) ? 1 : 2;
    if (tdeg[c] != want) return TypeClass::Invalid;
  }
  return TypeClass::B;
}

namespace {

// g plus a dummy uv edge whose id exceeds every id in g.
Graph with_dummy_edge(const Graph& g, Vertex u, Vertex v, EdgeId* dummy) {
  Graph h(g.num_vertices());
  for (const auto& e : g.edges()) h.add_edge(e.u, e.v, e.id);
  *dummy = g.max_id() + 1;
  h.add_edge(u, v, *dummy);
  return h;
}

OracleBudget uncapped(const OracleBudget& b) {
  OracleBudget x = b;
  x.vertex_cap = 1 << 20;
  return x;
}

std::optional<EdgeSet> opt_type_b(const Graph& g1, Vertex u, Vertex v, const OracleBudget& budget) {
  EdgeId dummy = 0;
  Graph h = with_dummy_edge(g1, u, v, &dummy);
  if (!is_2ec(h)) return std::nullopt;
  int di = h.index_of(dummy);
  SubsetSearch s;
  s.g = &h;
  s.forced.assign(h.num_edges(), 0);
  s.forced[di] = 1;
  for (int i = 0; i < h.num_edges(); ++i)
    if (i != di && !h.edge_at(i).is_loop()) s.free_edges.push_back(i);
  s.need.assign(h.num_vertices(), 2);
  s.superset_ok = [&h](const std::vector<char>& r) { return is_2ec_mask(h, r); };
  s.accept = [&h, di](const std::vector<char>& f) {
    if (!is_2ec_mask(h, f)) return false;
    std::vector<char> w = f;
    w[di] = 0;
    return !is_2ec_mask(h, w);
  };
  s.start_k = std::max(0, h.num_vertices() - 1);
  BudgetClock clock(budget);
  auto res = minimum_subset(s, clock);
  if (!res) return std::nullopt;
  return ids_of(h, *res);
}

std::optional<EdgeSet> opt_type_c(const Graph& g1, Vertex u, Vertex v, const OracleBudget& budget) {
  std::vector<Vertex> rest;
  for (Vertex x = 0; x < g1.num_vertices(); ++x)
    if (x != u && x != v) rest.push_back(x);
  int r = static_cast<int>(rest.size());
  if (r > 20) throw BudgetExhausted("type C search: side too large");
  struct Part {
    bool ok = false;
    EdgeSet edges;
  };
  std::map<std::vector<Vertex>, Part> memo;
  OracleBudget inner = uncapped(budget);
  auto solve_part = [&](const VertexSet& p) -> const Part& {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    Part part;
    if (p.size() == 1) {
      part.ok = true;
    } else {
      Graph sub = induced_subgraph(g1, p);
      if (is_2ec(sub)) {
        part.ok = true;
        EdgeSet local = min_2ecss(sub, inner);
        part.edges = local;  // induced_subgraph keeps ids
      }
    }
    return memo.emplace(p, std::move(part)).first->second;
  };
  auto lb = [](size_t sz) { return sz == 1 ? 0 : (sz == 2 ? 2 : static_cast<int>(sz)); };
  std::optional<EdgeSet> best;
  for (long long mask = 0; mask < (1LL << r); ++mask) {
    VertexSet pu{u}, pv{v};
    for (int i = 0; i < r; ++i) ((mask >> i) & 1 ? pu : pv).push_back(rest[i]);
    std::sort(pu.begin(), pu.end());
    std::sort(pv.begin(), pv.end());
    if (best && lb(pu.size()) + lb(pv.size()) > static_cast<int>(best->size())) continue;
    // cheap rejection before the exact solves
    if (pu.size() > 1 && !is_2ec(induced_subgraph(g1, pu))) continue;
    if (pv.size() > 1 && !is_2ec(induced_subgraph(g1, pv))) continue;
    const Part& a = solve_part(pu);
    if (!a.ok) continue;
    const Part& b = solve_part(pv);
    if (!b.ok) continue;
    EdgeSet cand = set_union(a.edges, b.edges);
    if (!best || cand.size() < best->size() || (cand.size() == best->size() && cand < *best)) best = cand;
  }
  return best;
}

}  // namespace

std::optional<EdgeSet> opt_type_ab(const Graph& g1, Vertex u, Vertex v, const OracleBudget& budget) {
  EdgeId dummy = 0;
  Graph h = with_dummy_edge(g1, u, v, &dummy);
  if (!is_2ec(h)) return std::nullopt;
  EdgeSet s = min_2ecss_forced(h, {dummy}, uncapped(budget));
  return set_difference(s, {dummy});
}

std::optional<EdgeSet> opt_type(const Graph& g1, Vertex u, Vertex v, TypeClass t, const Graph* g2, Vertex u2,
                                Vertex v2, const OracleBudget& budget) {
  auto g2_plus_uv_2ec = [&]() {
    EdgeId d = 0;
    return is_2ec(with_dummy_edge(*g2, u2, v2, &d));
  };
  switch (t) {
    case TypeClass::A:
      if (!is_2ec(g1)) return std::nullopt;
      if (g2 && !g2_plus_uv_2ec() && !opt_type_c(*g2, u2, v2, budget)) return std::nullopt;
      return min_2ecss(g1, uncapped(budget));
    case TypeClass::B:
      if (g2 && !g2_plus_uv_2ec()) return std::nullopt;
      return opt_type_b(g1, u, v, budget);
    case TypeClass::C:
      if (g2 && !is_2ec(*g2)) return std::nullopt;
      return opt_type_c(g1, u, v, budget);
    default:
      return std::nullopt;
  }
}

}  // namespace tecss
