#include <algorithm>
#include <numeric>
#include <sstream>

#include "tecss/cover.hpp"

namespace tecss {

std::string to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::small_cycle:
      return "small_cycle";
    case ComponentKind::large:
      return "large";
    case ComponentKind::complex:
      return "complex";
    case ComponentKind::other:
      return "other";
  }
  return "other";
}

void Monitors::merge(const Monitors& o) {
  matching_checks += o.matching_checks;
  matching_failures += o.matching_failures;
  ham_pair_checks += o.ham_pair_checks;
  ham_pair_failures += o.ham_pair_failures;
  shortcut_checks += o.shortcut_checks;
  shortcut_failures += o.shortcut_failures;
  impossible_branches += o.impossible_branches;
  reachable_checks += o.reachable_checks;
  reachable_failures += o.reachable_failures;
  fallback_moves += o.fallback_moves;
  cheap_rejections += o.cheap_rejections;
  canonical_stalls += o.canonical_stalls;
  counterexamples.insert(counterexamples.end(), o.counterexamples.begin(), o.counterexamples.end());
}

CoverStructure analyze_cover(const Graph& g, const EdgeSet& s) {
  int n = g.num_vertices();
  std::vector<char> alive(g.num_edges(), 0);
  for (EdgeId id : s) alive[g.index_of(id)] = 1;
  int count = 0;
  std::vector<int> label = component_labels_mask(g, alive, &count);
  std::vector<int> edges_in(count, 0);
  for (EdgeId id : s) ++edges_in[label[g.edge(id).u]];

  CoverStructure st;
  st.component_of.assign(n, -1);
  std::vector<int> index_of_label(count, -1);
  for (Vertex x = 0; x < n; ++x) {
    int c = label[x];
    if (edges_in[c] == 0) continue;
    if (index_of_label[c] < 0) {
      index_of_label[c] = static_cast<int>(st.components.size());
      st.components.emplace_back();
    }
    st.component_of[x] = index_of_label[c];
    st.components[index_of_label[c]].vertices.push_back(x);
  }
  std::vector<int> deg(n, 0);
  for (EdgeId id : s) {
    const Edge& e = g.edge(id);
    st.components[st.component_of[e.u]].edges.push_back(id);
    ++deg[e.u];
    ++deg[e.v];
  }
  BlockDecomposition bd = two_ec_blocks(g, s);
  for (EdgeId id : bd.bridges) st.components[st.component_of[g.edge(id).u]].bridges.push_back(id);
  for (const EdgeSet& be : bd.block_edges) {
    if (be.empty()) continue;
    st.components[st.component_of[g.edge(be.front()).u]].blocks.push_back(be);
  }
  st.num_bridges = static_cast<int>(bd.bridges.size());
  for (CoverComponent& c : st.components) {
    std::sort(c.blocks.begin(), c.blocks.end());
    bool all_two = std::all_of(c.vertices.begin(), c.vertices.end(), [&](Vertex x) { return deg[x] == 2; });
    c.is_cycle = c.bridges.empty() && all_two && c.edges.size() == c.vertices.size();
    if (!c.bridges.empty()) c.kind = ComponentKind::complex;
    else if (c.edges.size() >= 8) c.kind = ComponentKind::large;
    else if (c.is_cycle) c.kind = ComponentKind::small_cycle;
    else c.kind = ComponentKind::other;
  }
  return st;
}

CreditLedger credits(const CoverStructure& st) {
  CreditLedger led;
  for (const CoverComponent& c : st.components) {
    Rational cr;
    if (c.kind == ComponentKind::complex) {
      cr = Rational(1);
      for (const EdgeSet& b : c.blocks) led.block_credits.push_back({b, Rational(1)});
      for (EdgeId id : c.bridges) led.bridge_credits.push_back({id, Rational(1, 4)});
    } else if (c.edges.size() >= 8) {
      cr = Rational(2);
    } else {
      cr = Rational(static_cast<long long>(c.edges.size()), 4);
    }
    led.component_credits.push_back(cr);
    led.total += cr;
  }
  for (const auto& [b, r] : led.block_credits) led.total += r;
  for (const auto& [id, r] : led.bridge_credits) led.total += r;
  return led;
}

CreditLedger credits(const Graph& g, const EdgeSet& s) { return credits(analyze_cover(g, s)); }

Rational cost(const Graph& g, const EdgeSet& s) {
  return Rational(static_cast<long long>(s.size())) + credits(g, s).total;
}

bool is_2edge_cover(const Graph& g, const EdgeSet& s) {
  std::vector<int> deg(g.num_vertices(), 0);
  for (EdgeId id : s) {
    const Edge& e = g.edge(id);
    ++deg[e.u];
    ++deg[e.v];
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d >= 2; });
}

namespace {

bool is_triangle(const CoverComponent& c) { return c.vertices.size() == 3 && c.edges.size() == 3 && c.is_cycle; }

}  // namespace

bool is_triangle_free_cover(const Graph& g, const EdgeSet& s) {
  if (!is_2edge_cover(g, s)) return false;
  CoverStructure st = analyze_cover(g, s);
  return std::none_of(st.components.begin(), st.components.end(), is_triangle);
}

CanonicalCheck check_canonical(const Graph& g, const EdgeSet& s, const CoverStructure& st) {
  CanonicalCheck r;
  auto fail = [&](int prop, int comp, const std::string& why) {
    r.ok = false;
    r.property = prop;
    r.component = comp;
    std::ostringstream os;
    os << "property " << prop << ": " << why;
    if (comp >= 0) {
      os << " (component vertices";
      for (Vertex x : st.components[comp].vertices) os << ' ' << x;
      os << ")";
    }
    r.detail = os.str();
    return r;
  };
  if (!is_2edge_cover(g, s)) return fail(0, -1, "not a 2-edge cover");
  int k = static_cast<int>(st.components.size());
  for (int i = 0; i < k; ++i)
    if (is_triangle(st.components[i])) return fail(1, i, "triangle component");
  for (int i = 0; i < k; ++i) {
    const CoverComponent& c = st.components[i];
    if (c.edges.size() < 8 && !c.is_cycle) return fail(2, i, "component with fewer than 8 edges is not a cycle");
  }
  for (int i = 0; i < k; ++i) {
    const CoverComponent& c = st.components[i];
    if (c.kind != ComponentKind::complex) continue;
    for (const EdgeSet& b : c.blocks)
      if (b.size() < 4) return fail(3, i, "block with fewer than 4 edges");
  }
  for (int i = 0; i < k; ++i) {
    const CoverComponent& c = st.components[i];
    if (c.kind != ComponentKind::complex) continue;
    int big = 0;
    for (const EdgeSet& b : c.blocks)
      if (b.size() >= 6) ++big;
    if (big < 2) return fail(4, i, "complex component with fewer than 2 blocks of 6 or more edges");
  }
  bool has_big = std::any_of(st.components.begin(), st.components.end(),
                             [](const CoverComponent& c) { return c.vertices.size() >= 8; });
  if (!has_big) return fail(5, -1, "no component with 8 or more vertices");
  return r;
}

CanonicalCheck check_canonical(const Graph& g, const EdgeSet& s) { return check_canonical(g, s, analyze_cover(g, s)); }

bool is_coarsening(const Graph& g, const EdgeSet& before, const EdgeSet& after) {
  CoverStructure a = analyze_cover(g, before), b = analyze_cover(g, after);
  for (const CoverComponent& c : a.components) {
    int target = b.component_of[c.vertices.front()];
    if (target < 0) return false;
    for (Vertex x : c.vertices)
      if (b.component_of[x] != target) return false;
  }
  return true;
}

CanonicalCover make_canonical_cover(const Graph& g, const EdgeSet& s) {
  CoverStructure st = analyze_cover(g, s);
  CanonicalCover c;
  c.edges = s;
  c.ledger = credits(st);
  for (const CoverComponent& comp : st.components) c.classification.push_back(comp.kind);
  return c;
}

MoveRecord make_move_record(const Graph& g, const std::string& stage, const std::string& rule, const EdgeSet& before,
                            const EdgeSet& after) {
  MoveRecord m;
  m.stage = stage;
  m.rule = rule;
  m.added = set_difference(after, before);
  m.removed = set_difference(before, after);
  CoverStructure a = analyze_cover(g, before), b = analyze_cover(g, after);
  m.size_before = static_cast<int>(before.size());
  m.size_after = static_cast<int>(after.size());
  m.components_before = static_cast<int>(a.components.size());
  m.components_after = static_cast<int>(b.components.size());
  m.bridges_before = a.num_bridges;
  m.bridges_after = b.num_bridges;
  m.cost_before = Rational(m.size_before) + credits(a).total;
  m.cost_after = Rational(m.size_after) + credits(b).total;
  m.coarsening = is_coarsening(g, before, after);
  CanonicalCheck chk = check_canonical(g, after, b);
  m.canonical_after = chk.ok;
  m.canonical_detail = chk.detail;
  return m;
}

// ---- guesses ----

namespace {

constexpr int kGuessVertices = 8;

struct GuessWalker {
  const Graph& g;
  const std::function<bool(const EdgeSet&)>& visit;
  long long emitted = 0;
  bool stopped = false;
  std::vector<char> in_sub;

  GuessWalker(const Graph& graph, const std::function<bool(const EdgeSet&)>& v)
      : g(graph), visit(v), in_sub(graph.num_vertices(), 0) {}

  void trees_of(const VertexSet& w) {
    std::vector<int> local(g.num_vertices(), -1);
    for (int i = 0; i < kGuessVertices; ++i) local[w[i]] = i;
    std::vector<std::pair<EdgeId, std::pair<int, int>>> es;
    for (const Edge& e : g.edges())
      if (!e.is_loop() && local[e.u] >= 0 && local[e.v] >= 0) es.push_back({e.id, {local[e.u], local[e.v]}});
    std::vector<int> parent(kGuessVertices);
    std::iota(parent.begin(), parent.end(), 0);
    EdgeSet chosen;
    grow(es, 0, parent, chosen);
  }

  static int find(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x];
    return x;
  }

  void grow(const std::vector<std::pair<EdgeId, std::pair<int, int>>>& es, size_t i, std::vector<int> parent,
            EdgeSet& chosen) {
    if (stopped) return;
    if (static_cast<int>(chosen.size()) == kGuessVertices - 1) {
      ++emitted;
      if (!visit(chosen)) stopped = true;
      return;
    }
    if (i == es.size()) return;
    if (static_cast<int>(chosen.size() + (es.size() - i)) < kGuessVertices - 1) return;
    int a = find(parent, es[i].second.first), b = find(parent, es[i].second.second);
    if (a != b) {
      std::vector<int> joined = parent;
      joined[a] = b;
      chosen.push_back(es[i].first);
      grow(es, i + 1, joined, chosen);
      chosen.pop_back();
    }
    grow(es, i + 1, parent, chosen);
  }

  // ESU: each connected set whose smallest vertex is root appears once.
  void extend(VertexSet& sub, std::vector<Vertex> ext, Vertex root) {
    if (stopped) return;
    if (static_cast<int>(sub.size()) == kGuessVertices) {
      VertexSet sorted = sub;
      std::sort(sorted.begin(), sorted.end());
      trees_of(sorted);
      return;
    }
    while (!ext.empty() && !stopped) {
      Vertex w = ext.front();
      ext.erase(ext.begin());
      std::vector<Vertex> next = ext;
      for (const auto& inc : g.incident(w)) {
        Vertex y = inc.nbr;
        if (y <= root || in_sub[y] || y == w) continue;
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
      extend(sub, next, root);
      in_sub[w] = 0;
      sub.pop_back();
    }
  }
};

}  // namespace

long long enumerate_guesses(const Graph& g, const std::function<bool(const EdgeSet&)>& visit) {
  GuessWalker w(g, visit);
  for (Vertex root = 0; root < g.num_vertices() && !w.stopped; ++root) {
    VertexSet sub{root};
    w.in_sub[root] = 1;
    std::vector<Vertex> ext;
    for (const auto& inc : g.incident(root))
      if (inc.nbr > root && std::find(ext.begin(), ext.end(), inc.nbr) == ext.end()) ext.push_back(inc.nbr);
    w.extend(sub, ext, root);
    w.in_sub[root] = 0;
  }
  return w.emitted;
}

EdgeSet initial_cover(const Graph& g, const EdgeSet& f, const OracleBudget& budget) {
  // min_tf2ec subdivides every forced edge with a fresh degree-2 vertex,
  // which is exactly the guess-forcing construction.
  return min_tf2ec(g, f, budget);
}

}  // namespace tecss
