#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "tecss/bridge_cover.hpp"

namespace tecss {

TcTree build_tc(const Graph& g, const EdgeSet& s, int component) {
  CoverStructure st = analyze_cover(g, s);
  if (component < 0 || component >= static_cast<int>(st.components.size()))
    throw std::invalid_argument("build_tc: no such component");
  const CoverComponent& c = st.components[component];
  if (c.bridges.empty()) throw std::invalid_argument("build_tc: component has no bridge");
  BlockDecomposition bd = two_ec_blocks(g, s);

  TcTree tc;
  tc.component = component;
  int n = g.num_vertices();
  tc.node_of.assign(n, -1);
  // tree nodes: 2EC classes of C, in order of smallest vertex
  std::vector<int> node_of_class(bd.num_classes, -1);
  for (Vertex x : c.vertices) {
    int cl = bd.class_of[x];
    if (node_of_class[cl] < 0) {
      node_of_class[cl] = static_cast<int>(tc.members.size());
      tc.members.emplace_back();
      tc.is_block.push_back(bd.block_of_class[cl] >= 0 ? 1 : 0);
    }
    tc.node_of[x] = node_of_class[cl];
    tc.members[node_of_class[cl]].push_back(x);
  }
  tc.tc_size = static_cast<int>(tc.members.size());
  // every other vertex: its cover component; vertices outside the cover
  // (none in a 2-edge cover) would each be a node of their own
  std::vector<int> node_of_comp(st.components.size(), -1);
  for (Vertex x = 0; x < n; ++x) {
    if (tc.node_of[x] >= 0) continue;
    int comp = st.component_of[x];
    if (comp >= 0 && node_of_comp[comp] >= 0) {
      tc.node_of[x] = node_of_comp[comp];
    } else {
      int node = static_cast<int>(tc.members.size());
      tc.members.emplace_back();
      if (comp >= 0) node_of_comp[comp] = node;
      tc.node_of[x] = node;
    }
    tc.members[tc.node_of[x]].push_back(x);
  }
  tc.tc_edges = c.bridges;
  tc.tree_adj.assign(tc.tc_size, {});
  tc.cross_adj.assign(tc.num_nodes(), {});
  for (EdgeId id : c.bridges) {
    const Edge& e = g.edge(id);
    int a = tc.node_of[e.u], b = tc.node_of[e.v];
    tc.tree_adj[a].push_back({b, id});
    tc.tree_adj[b].push_back({a, id});
  }
  for (const Edge& e : g.edges()) {
    int a = tc.node_of[e.u], b = tc.node_of[e.v];
    if (a == b || contains(tc.tc_edges, e.id)) continue;
    tc.cross_adj[a].push_back({b, e.id});
    tc.cross_adj[b].push_back({a, e.id});
  }
  return tc;
}

namespace {

struct Reach {
  std::vector<char> reached;  // tree nodes reached through a covering path
  std::vector<int> parent;
  std::vector<EdgeId> parent_edge;
};

Reach reach_from(const TcTree& tc, const std::vector<int>& w) {
  int k = tc.num_nodes();
  Reach r;
  r.reached.assign(k, 0);
  r.parent.assign(k, -1);
  r.parent_edge.assign(k, -1);
  std::vector<char> in_w(k, 0), seen(k, 0);
  std::deque<int> q;
  for (int x : w) {
    in_w[x] = 1;
    seen[x] = 1;
    q.push_back(x);
  }
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto [y, id] : tc.cross_adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      r.parent[y] = x;
      r.parent_edge[y] = id;
      if (tc.in_tree(y)) r.reached[y] = 1;  // terminal hop
      else q.push_back(y);
    }
  }
  return r;
}

std::vector<int> tree_parents(const TcTree& tc, int root, std::vector<int>* dist = nullptr) {
  std::vector<int> parent(tc.tc_size, -2), d(tc.tc_size, -1);
  std::deque<int> q{root};
  parent[root] = -1;
  d[root] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto [y, id] : tc.tree_adj[x]) {
      if (parent[y] != -2) continue;
      parent[y] = x;
      d[y] = d[x] + 1;
      q.push_back(y);
    }
  }
  if (dist) *dist = d;
  return parent;
}

}  // namespace

std::vector<int> reachable(const TcTree& tc, const std::vector<int>& w) {
  Reach r = reach_from(tc, w);
  std::vector<int> out;
  for (int x = 0; x < tc.tc_size; ++x)
    if (r.reached[x]) out.push_back(x);
  return out;
}

std::optional<EdgeSet> covering_path(const TcTree& tc, const std::vector<int>& w, int target) {
  Reach r = reach_from(tc, w);
  if (target >= tc.tc_size || !r.reached[target]) return std::nullopt;
  EdgeSet out;
  for (int x = target; r.parent[x] >= 0; x = r.parent[x]) out.push_back(r.parent_edge[x]);
  return make_set(out);
}

std::pair<int, int> tree_path_counts(const TcTree& tc, int a, int b) {
  std::vector<int> parent = tree_parents(tc, a);
  int bridges = 0, blocks = tc.is_block[b] ? 1 : 0;
  for (int x = b; x != a; x = parent[x]) {
    ++bridges;
    if (tc.is_block[parent[x]]) ++blocks;
  }
  return {bridges, blocks};
}

bool is_cheap(int bridges, int blocks) { return bridges + 4 * blocks - 8 >= 0; }

std::vector<BridgeCoverMove> cheap_paths(const Graph& g, const EdgeSet& s, const TcTree& tc) {
  std::vector<BridgeCoverMove> out;
  Rational before = cost(g, s);
  for (int u = 0; u < tc.tc_size; ++u) {
    Reach r = reach_from(tc, {u});
    for (int v = u + 1; v < tc.tc_size; ++v) {
      if (!r.reached[v]) continue;
      auto [br, bl] = tree_path_counts(tc, u, v);
      if (!is_cheap(br, bl)) continue;
      BridgeCoverMove m;
      m.rule = "cheap_path";
      m.added = *covering_path(tc, {u}, v);
      m.cost_delta = before - cost(g, set_union(s, m.added));
      std::ostringstream os;
      os << "bridges " << br << " blocks " << bl << " bound " << to_string(Rational(br, 4) + Rational(bl) - 2);
      m.note = os.str();
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::optional<BridgeCoverMove> find_cheap_path(const Graph& g, const EdgeSet& s, const TcTree& tc) {
  std::vector<BridgeCoverMove> all = cheap_paths(g, s, tc);
  if (all.empty()) return std::nullopt;
  return all.front();
}

namespace {

std::string dump(const Graph& g, const EdgeSet& s) {
  std::ostringstream os;
  os << describe(g) << "cover:";
  for (EdgeId id : s) os << ' ' << id;
  return os.str();
}

struct StepSearch {
  const Graph& g;
  const EdgeSet& s;
  const TcTree& tc;
  CoverStructure st;
  Rational cost_s{0};
  std::optional<BridgeCoverMove> found;

  StepSearch(const Graph& graph, const EdgeSet& cover, const TcTree& t) : g(graph), s(cover), tc(t) {
    st = analyze_cover(g, s);
    cost_s = Rational(static_cast<long long>(s.size())) + credits(st).total;
  }

  // Commits the move if it keeps a canonical cover, is a coarsening, removes
  // bridges without creating new ones, and does not raise the cost.
  bool attempt(EdgeSet added, const EdgeSet& removed, const std::string& rule, const std::string& note = {}) {
    if (found) return true;
    added = set_difference(added, s);
    if (!std::includes(s.begin(), s.end(), removed.begin(), removed.end())) return false;
    EdgeSet next = set_union(set_difference(s, removed), added);
    if (!is_2edge_cover(g, next)) return false;
    CoverStructure ns = analyze_cover(g, next);
    if (ns.num_bridges >= st.num_bridges) return false;
    BlockDecomposition bd = two_ec_blocks(g, next);
    BlockDecomposition old = two_ec_blocks(g, s);
    if (!std::includes(old.bridges.begin(), old.bridges.end(), bd.bridges.begin(), bd.bridges.end())) return false;
    Rational c = Rational(static_cast<long long>(next.size())) + credits(ns).total;
    if (c > cost_s) return false;
    if (!check_canonical(g, next, ns).ok) return false;
    for (const CoverComponent& comp : st.components) {
      int target = ns.component_of[comp.vertices.front()];
      for (Vertex x : comp.vertices)
        if (ns.component_of[x] != target) return false;
    }
    BridgeCoverMove m;
    m.rule = rule;
    m.added = added;
    m.removed = removed;
    m.cost_delta = cost_s - c;
    m.note = note;
    found = m;
    return true;
  }

  std::vector<int> internal_nodes(const EdgeSet& path) const {
    std::vector<int> out;
    for (EdgeId id : path)
      for (Vertex x : {g.edge(id).u, g.edge(id).v})
        if (!tc.in_tree(tc.node_of[x])) out.push_back(tc.node_of[x]);
    return make_set(out);
  }

  // Union of covering paths b..u and b2..u2; when they share an internal
  // node, the b..b2 covering path through it is used instead.
  bool merge_two_paths(int b, int b2, int u, int u2) {
    auto p1 = covering_path(tc, {b}, u);
    auto p2 = covering_path(tc, {b2}, u2);
    if (!p1 || !p2) return false;
    if (!set_intersection(internal_nodes(*p1), internal_nodes(*p2)).empty()) {
      auto direct = covering_path(tc, {b}, b2);
      return direct && attempt(*direct, {}, "merge_two_paths_shared_node");
    }
    return attempt(set_union(*p1, *p2), {}, "merge_two_paths");
  }
};

// Fallback: one or two covering paths, optionally dropping one bridge.
BridgeCoverMove fallback(const Graph& g, const TcTree& tc, StepSearch& search, Monitors& mon, const std::string& why) {
  ++mon.fallback_moves;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < tc.tc_size; ++a)
    for (int c : reachable(tc, {a}))
      if (a < c) pairs.push_back({a, c});
  std::vector<EdgeSet> paths;
  for (auto [a, c] : pairs) paths.push_back(*covering_path(tc, {a}, c));
  for (const EdgeSet& pth : paths)
    if (search.attempt(pth, {}, "fallback_path", why)) break;
  long long budget = 200000;
  for (size_t i = 0; i < paths.size() && !search.found && budget > 0; ++i)
    for (size_t j = i + 1; j < paths.size() && !search.found && budget > 0; ++j) {
      --budget;
      if (search.attempt(set_union(paths[i], paths[j]), {}, "fallback_two_paths", why)) break;
      for (EdgeId br : tc.tc_edges) {
        --budget;
        if (search.attempt(set_union(paths[i], paths[j]), {br}, "fallback_two_paths_drop_bridge", why)) break;
      }
    }
  if (search.found) {
    search.found->fallback = true;
    return *search.found;
  }
  mon.counterexamples.push_back("bridge covering: no valid move\n" + dump(g, search.s));
  throw std::runtime_error("bridge covering found no valid move");
}

}  // namespace

BridgeCoverMove cover_step(const Graph& g, const EdgeSet& s, int component, Monitors* monitors) {
  TcTree tc = build_tc(g, s, component);
  StepSearch search(g, s, tc);
  Monitors scratch;
  Monitors& mon = monitors ? *monitors : scratch;
  auto flag_impossible = [&](const std::string& what) {
    ++mon.impossible_branches;
    mon.counterexamples.push_back("bridge covering: " + what + "\n" + dump(g, s));
  };

  std::vector<BridgeCoverMove> cheap = cheap_paths(g, s, tc);
  for (const BridgeCoverMove& m : cheap)
    if (search.attempt(m.added, {}, m.rule, m.note)) return *search.found;
  // The case analysis below assumes no cheap path exists at all.
  if (!cheap.empty()) {
    ++mon.cheap_rejections;
    return fallback(g, tc, search, mon, "every cheap path breaks a canonical property");
  }

  // longest tree path b = p[0], u1 = p[1], ...
  std::vector<int> dist;
  tree_parents(tc, 0, &dist);
  int b = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  std::vector<int> parent = tree_parents(tc, b, &dist);
  int end = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  std::vector<int> p;
  for (int x = end; x != -1; x = parent[x]) p.push_back(x);
  std::reverse(p.begin(), p.end());
  int len = static_cast<int>(p.size()) - 1;
  auto u = [&](int i) { return i <= len ? p[i] : -1; };

  // attachment index on p of every tree node
  std::vector<int> att(tc.tc_size, -1);
  std::deque<int> q;
  for (int i = 0; i <= len; ++i) {
    att[p[i]] = i;
    q.push_back(p[i]);
  }
  std::vector<char> on_p(tc.tc_size, 0);
  for (int x : p) on_p[x] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto [y, id] : tc.tree_adj[x])
      if (att[y] < 0) {
        att[y] = att[x];
        q.push_back(y);
      }
  }
  auto in_v12 = [&](int x) { return !on_p[x] && (att[x] == 1 || att[x] == 2); };
  auto is_leaf_block = [&](int x) { return tc.is_block[x] && tc.tree_adj[x].size() == 1; };

  std::vector<int> rb = reachable(tc, {b});
  ++mon.reachable_checks;
  for (int x : rb)
    if (tc.is_block[x]) {
      ++mon.reachable_failures;
      mon.counterexamples.push_back("bridge covering: block node reachable from the end block without a cheap path\n" +
                                    dump(g, s));
      break;
    }

  std::vector<int> leaves12;
  for (int x = 0; x < tc.tc_size; ++x)
    if (in_v12(x) && is_leaf_block(x)) leaves12.push_back(x);

  bool case1 = false;
  std::vector<int> case2;
  for (int x : rb) {
    bool near_p = x == u(1) || x == u(2) || x == u(3);
    if (in_v12(x)) case2.push_back(x);
    else if (!near_p) case1 = true;
  }

  if (case1) {
    flag_impossible("a far node is reachable from the end block");
  } else if (!case2.empty()) {
    for (int x : case2) {
      // leaves hanging next to x first
      std::vector<int> order;
      for (auto [y, id] : tc.tree_adj[x])
        if (in_v12(y) && is_leaf_block(y)) order.push_back(y);
      for (int y : leaves12)
        if (std::find(order.begin(), order.end(), y) == order.end()) order.push_back(y);
      for (int b2 : order)
        for (int u2 : reachable(tc, {b2})) {
          if (u2 == b || u2 == x || u2 == b2) continue;
          if (search.merge_two_paths(b, b2, x, u2)) return *search.found;
        }
    }
  } else {
    std::vector<int> rest;
    for (int x : rb)
      if (x != u(1)) rest.push_back(x);
    std::vector<int> want = make_set({u(2), u(3)});
    if (make_set(rest) != want) {
      flag_impossible("reachable set of the end block is not {u2, u3}");
    } else if (!leaves12.empty()) {
      for (int b2 : leaves12) {
        int ell = tc.tree_adj[b2].front().first;
        for (int u2 : reachable(tc, {b2})) {
          if (u2 == ell) continue;
          if (search.merge_two_paths(b, b2, u(3), u2)) return *search.found;
        }
      }
    } else {
      std::vector<int> rbu = reachable(tc, {b, u(1)});
      for (int b2 : rbu)
        if (tc.is_block[b2] && search.merge_two_paths(b, b2, u(2), u(1))) return *search.found;
      EdgeId u1u2 = -1;
      for (auto [y, id] : tc.tree_adj[u(1)])
        if (y == u(2)) u1u2 = id;
      auto p1 = covering_path(tc, {b}, u(2));
      for (int u2 : rbu) {
        if (u2 == u(2) || u2 == u(3) || tc.is_block[u2]) continue;
        auto p2 = covering_path(tc, {u(1)}, u2);
        if (p1 && p2 && search.attempt(set_union(*p1, *p2), {u1u2}, "two_paths_drop_bridge")) return *search.found;
      }
    }
  }

  return fallback(g, tc, search, mon, "no move from the case analysis passed verification");
}

CanonicalCover cover_all(const Graph& g, const CanonicalCover& cover, SolveTrace* trace) {
  EdgeSet s = cover.edges;
  Monitors scratch;
  Monitors* mon = trace ? &trace->monitors : &scratch;
  for (;;) {
    CoverStructure st = analyze_cover(g, s);
    int target = -1;
    for (int i = 0; i < static_cast<int>(st.components.size()); ++i)
      if (st.components[i].kind == ComponentKind::complex) {
        target = i;
        break;
      }
    if (target < 0) break;
    BridgeCoverMove m = cover_step(g, s, target, mon);
    EdgeSet next = set_union(set_difference(s, m.removed), m.added);
    if (trace) {
      MoveRecord r = make_move_record(g, "bridge_cover", m.rule, s, next);
      r.flagged = m.fallback;
      r.note = m.note;
      trace->moves.push_back(std::move(r));
    }
    s = std::move(next);
  }
  return make_canonical_cover(g, s);
}

}  // namespace tecss
