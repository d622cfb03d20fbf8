#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "tecss/gluing.hpp"

namespace tecss {

namespace {

constexpr long long kCycleBudget = 400000;  // DFS steps per cycle query

std::string dump(const Graph& g, const EdgeSet& s) {
  std::ostringstream os;
  os << describe(g) << "cover:";
  for (EdgeId id : s) os << ' ' << id;
  return os.str();
}

bool single_2ec(const Graph& g, const EdgeSet& f) {
  CoverStructure st = analyze_cover(g, f);
  return st.components.size() == 1 && st.num_bridges == 0;
}

// Vertex order of a cycle component.
std::vector<Vertex> cycle_order(const Graph& g, const EdgeSet& edges) {
  std::vector<Vertex> order;
  if (edges.empty()) return order;
  Vertex start = std::min(g.edge(edges.front()).u, g.edge(edges.front()).v);
  for (EdgeId id : edges) start = std::min({start, g.edge(id).u, g.edge(id).v});
  Vertex prev = -1, cur = start;
  EdgeId last = -1;
  do {
    order.push_back(cur);
    Vertex next = -1;
    for (EdgeId id : edges) {
      const Edge& e = g.edge(id);
      if (id == last || (e.u != cur && e.v != cur)) continue;
      next = e.other(cur);
      last = id;
      break;
    }
    if (next < 0) break;
    prev = cur;
    cur = next;
  } while (cur != start && order.size() <= edges.size());
  (void)prev;
  return order;
}

int cycle_distance(const std::vector<Vertex>& order, Vertex a, Vertex b) {
  int k = static_cast<int>(order.size());
  int pa = static_cast<int>(std::find(order.begin(), order.end(), a) - order.begin());
  int pb = static_cast<int>(std::find(order.begin(), order.end(), b) - order.begin());
  int d = std::abs(pa - pb);
  return std::min(d, k - d);
}

std::optional<EdgeId> edge_in(const Graph& g, const EdgeSet& set, Vertex a, Vertex b) {
  for (EdgeId id : set) {
    const Edge& e = g.edge(id);
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return id;
  }
  return std::nullopt;
}

EdgeSet path_edges(const Graph& g, const std::vector<Vertex>& order) {
  EdgeSet out;
  for (size_t i = 0; i + 1 < order.size(); ++i) out.push_back(*g.edge_between(order[i], order[i + 1]));
  return make_set(out);
}

int position_of(const Cycle& f, int node) {
  auto it = std::find(f.nodes.begin(), f.nodes.end(), node);
  return it == f.nodes.end() ? -1 : static_cast<int>(it - f.nodes.begin());
}

EdgeSet cycle_edges(const Cycle& f) { return make_set(f.edges); }

// Simple cycles of a block through a start node, shortest first, each found
// once per direction. The visitor returns true to stop.
class BlockCycles {
 public:
  BlockCycles(const GlueContext& ctx, int block) : ctx_(ctx), in_block_(ctx.cg.ghat.num_edges(), 0) {
    for (EdgeId id : ctx.blocks[block].edges) in_block_[ctx.cg.ghat.index_of(id)] = 1;
    size_ = static_cast<int>(ctx.blocks[block].vertices.size());
  }

  bool run(int start, int min_len, const std::function<bool(const Cycle&)>& visit, long long budget = kCycleBudget) {
    budget_ = budget;
    start_ = start;
    visit_ = &visit;
    on_path_.assign(ctx_.num_nodes(), 0);
    for (int len = std::max(2, min_len); len <= size_; ++len) {
      nodes_ = {start};
      edges_.clear();
      on_path_[start] = 1;
      if (dfs(start, len)) return true;
      on_path_[start] = 0;
      if (budget_ < 0) return false;
    }
    return false;
  }

  int size() const { return size_; }

 private:
  bool dfs(int x, int len) {
    if (--budget_ < 0) return false;
    const Graph& h = ctx_.cg.ghat;
    int depth = static_cast<int>(edges_.size());
    for (const auto& inc : h.incident(x)) {
      if (!in_block_[inc.index]) continue;
      EdgeId id = h.edge_at(inc.index).id;
      if (!edges_.empty() && id == edges_.back()) continue;
      int y = inc.nbr;
      if (depth + 1 == len) {
        if (y != start_) continue;
        Cycle c{nodes_, edges_};
        c.edges.push_back(id);
        if ((*visit_)(c)) return true;
        continue;
      }
      if (on_path_[y]) continue;
      nodes_.push_back(y);
      edges_.push_back(id);
      on_path_[y] = 1;
      bool stop = dfs(y, len);
      on_path_[y] = 0;
      nodes_.pop_back();
      edges_.pop_back();
      if (stop) return true;
      if (budget_ < 0) return false;
    }
    return false;
  }

  const GlueContext& ctx_;
  std::vector<char> in_block_;
  int size_ = 0;
  int start_ = -1;
  long long budget_ = 0;
  const std::function<bool(const Cycle&)>* visit_ = nullptr;
  std::vector<int> nodes_;
  std::vector<EdgeId> edges_;
  std::vector<char> on_path_;
};

bool in_block(const GlueContext& ctx, int block, int node) {
  return std::binary_search(ctx.blocks[block].vertices.begin(), ctx.blocks[block].vertices.end(), node);
}

// Checks a candidate cover and builds the move record.
struct Verifier {
  const Graph& g;
  const EdgeSet& s;
  CoverStructure st;
  Rational cost_s{0};

  Verifier(const Graph& graph, const EdgeSet& cover) : g(graph), s(cover) {
    st = analyze_cover(g, s);
    cost_s = Rational(static_cast<long long>(s.size())) + credits(st).total;
  }

  std::optional<GlueMove> check(const EdgeSet& next, const std::string& rule, const std::string& note = {}) const {
    if (!is_2edge_cover(g, next)) return std::nullopt;
    CoverStructure ns = analyze_cover(g, next);
    if (ns.num_bridges != 0 || ns.components.size() >= st.components.size()) return std::nullopt;
    Rational c = Rational(static_cast<long long>(next.size())) + credits(ns).total;
    if (c > cost_s) return std::nullopt;
    if (!check_canonical(g, next, ns).ok) return std::nullopt;
    std::vector<int> hits(ns.components.size(), 0);
    for (const CoverComponent& comp : st.components) {
      int target = ns.component_of[comp.vertices.front()];
      for (Vertex x : comp.vertices)
        if (ns.component_of[x] != target) return std::nullopt;
      ++hits[target];
    }
    GlueMove m;
    m.rule = rule;
    m.added = set_difference(next, s);
    m.removed = set_difference(s, next);
    for (int i = 0; i < static_cast<int>(st.components.size()); ++i) {
      int target = ns.component_of[st.components[i].vertices.front()];
      if (hits[target] > 1) m.merged.push_back(i);
    }
    m.cost_delta = cost_s - c;
    m.note = note;
    return m;
  }
};

}  // namespace

GlueContext make_glue_context(const Graph& g, const EdgeSet& s) {
  GlueContext ctx;
  ctx.host = &g;
  ctx.cg = component_graph(g, s);
  int k = ctx.cg.ghat.num_vertices();
  ctx.blocks = biconnected_blocks(ctx.cg.ghat);
  for (VcBlock& b : ctx.blocks) std::sort(b.vertices.begin(), b.vertices.end());
  ctx.non_local.assign(k, 0);
  for (Vertex x : cut_vertices(ctx.cg.ghat)) ctx.non_local[x] = 1;
  ctx.size.assign(k, 0);
  ctx.is_cycle.assign(k, 0);
  ctx.credit.assign(k, Rational(0));
  ctx.blocks_of.assign(k, {});
  for (int x = 0; x < k; ++x) {
    int e = static_cast<int>(ctx.cg.comp_edges[x].size());
    ctx.size[x] = e;
    ctx.is_cycle[x] = e == static_cast<int>(ctx.cg.members[x].size()) && e >= 3;
    ctx.credit[x] = e >= 8 ? Rational(2) : Rational(e, 4);
  }
  for (int b = 0; b < static_cast<int>(ctx.blocks.size()); ++b)
    for (int x : ctx.blocks[b].vertices) ctx.blocks_of[x].push_back(b);
  if (k == 1) {
    ctx.anchor = 0;
    return ctx;
  }
  int best = -1;
  for (int b = 0; b < static_cast<int>(ctx.blocks.size()); ++b) {
    const VertexSet& vs = ctx.blocks[b].vertices;
    if (std::none_of(vs.begin(), vs.end(), [&](int x) { return ctx.is_large(x); })) continue;
    if (best < 0 || vs < ctx.blocks[best].vertices) best = b;
  }
  if (best < 0) throw std::invalid_argument("gluing: no block contains a large component");
  ctx.anchor_block = best;
  for (int x : ctx.blocks[best].vertices)
    if (ctx.is_large(x)) {
      ctx.anchor = x;
      break;
    }
  return ctx;
}

std::optional<EdgeSet> local_3_matching(const Graph& g, const GlueContext& ctx, int block,
                                        const std::vector<int>& side) {
  VertexSet v1, v2;
  for (int x : ctx.blocks[block].vertices) {
    VertexSet& target = std::find(side.begin(), side.end(), x) != side.end() ? v1 : v2;
    target.insert(target.end(), ctx.cg.members[x].begin(), ctx.cg.members[x].end());
  }
  if (v1.empty() || v2.empty()) return std::nullopt;
  auto m = find_cross_matching(g, make_set(v1), make_set(v2), 3);
  if (!m) return std::nullopt;
  EdgeSet out(m->begin(), m->begin() + 3);
  return make_set(out);
}

std::vector<std::pair<Vertex, Vertex>> hamiltonian_pairs(const Graph& g, const VertexSet& cycle) {
  VertexSet vs = make_set(cycle);
  std::vector<Vertex> outer;
  for (Vertex x : vs)
    for (const auto& inc : g.incident(x))
      if (!contains(vs, inc.nbr)) {
        outer.push_back(x);
        break;
      }
  std::vector<std::pair<Vertex, Vertex>> out;
  for (size_t i = 0; i < outer.size(); ++i)
    for (size_t j = i + 1; j < outer.size(); ++j)
      if (hamiltonian_path(g, vs, outer[i], outer[j])) out.push_back({outer[i], outer[j]});
  return out;
}

int hamiltonian_pair_guarantee(int cycle_length) { return cycle_length <= 6 ? 2 : 1; }

std::pair<Vertex, Vertex> attachments(const GlueContext& ctx, const Cycle& f, int position) {
  int k = static_cast<int>(f.nodes.size());
  int node = f.nodes[position];
  auto end_in = [&](EdgeId id) {
    const Edge& e = ctx.host->edge(id);
    return ctx.cg.vmap[e.u] == node ? e.u : e.v;
  };
  return {end_in(f.edges[(position + k - 1) % k]), end_in(f.edges[position])};
}

namespace {

bool distinct_with(const std::pair<Vertex, Vertex>& a, Vertex must) {
  return a.first != a.second && (must < 0 || a.first == must || a.second == must);
}

// Other attachment vertex once `must` is one of them.
Vertex other_of(const std::pair<Vertex, Vertex>& a, Vertex must) { return a.first == must ? a.second : a.first; }

bool each_nice_cycle(const GlueContext& ctx, int block, int c1, int c2, Vertex u1, Vertex u2, int min_len,
                     bool distinct_c2, const std::function<bool(const Cycle&)>& visit) {
  BlockCycles bc(ctx, block);
  return bc.run(c1, min_len, [&](const Cycle& f) {
    int p2 = position_of(f, c2);
    if (p2 < 0) return false;
    if (!distinct_with(attachments(ctx, f, 0), u1)) return false;
    auto a2 = attachments(ctx, f, p2);
    if (distinct_c2 ? !distinct_with(a2, u2) : (u2 >= 0 && a2.first != u2 && a2.second != u2)) return false;
    return visit(f);
  });
}

bool each_shortcut_cycle(const Graph& g, const GlueContext& ctx, int block, int c1, int c2, Vertex u2,
                         bool need_adjacent, bool distinct_c2, const std::function<bool(const ShortcutCycle&)>& visit) {
  BlockCycles bc(ctx, block);
  const VertexSet& vs = ctx.cg.members[c1];
  return bc.run(c1, 2, [&](const Cycle& f) {
    int p2 = position_of(f, c2);
    if (p2 < 0) return false;
    int k = static_cast<int>(f.nodes.size());
    if (need_adjacent && p2 != 1 && p2 != k - 1) return false;
    auto a1 = attachments(ctx, f, 0);
    if (a1.first == a1.second) return false;
    auto a2 = attachments(ctx, f, p2);
    if (distinct_c2 ? !distinct_with(a2, u2) : (u2 >= 0 && a2.first != u2 && a2.second != u2)) return false;
    auto ham = hamiltonian_path(g, vs, a1.first, a1.second);
    if (!ham) return false;
    return visit(ShortcutCycle{f, a1.first, a1.second, *ham});
  });
}

}  // namespace

std::optional<Cycle> nice_cycle(const GlueContext& ctx, int block, int c1, int c2, Vertex u1, Vertex u2) {
  std::optional<Cycle> out;
  each_nice_cycle(ctx, block, c1, c2, u1, u2, 2, true, [&](const Cycle& f) {
    out = f;
    return true;
  });
  return out;
}

std::optional<Cycle> cycle_size3(const GlueContext& ctx, int block, int c1, int c2, Vertex u1) {
  std::optional<Cycle> out;
  int min_len = std::min(3, static_cast<int>(ctx.blocks[block].vertices.size()));
  each_nice_cycle(ctx, block, c1, c2, u1, -1, min_len, false, [&](const Cycle& f) {
    out = f;
    return true;
  });
  return out;
}

std::optional<ShortcutCycle> shortcut_c4_local_c5(const Graph& g, const GlueContext& ctx, int block, int c1, int c2,
                                                  Vertex u2) {
  std::optional<ShortcutCycle> out;
  each_shortcut_cycle(g, ctx, block, c1, c2, u2, false, true, [&](const ShortcutCycle& sc) {
    out = sc;
    return true;
  });
  return out;
}

std::optional<EdgeId> shortcut_edge(const Graph& g, const EdgeSet& f, const std::vector<Vertex>& cycle,
                                    std::pair<Vertex, Vertex> a1, std::pair<Vertex, Vertex> a2,
                                    bool* recheck_failed) {
  if (recheck_failed) *recheck_failed = false;
  int k = static_cast<int>(cycle.size());
  auto pos = [&](Vertex x) { return static_cast<int>(std::find(cycle.begin(), cycle.end(), x) - cycle.begin()); };
  auto adjacent = [&](Vertex x, Vertex y) {
    int d = std::abs(pos(x) - pos(y));
    return d == 1 || d == k - 1;
  };
  // distance along the cycle with the edge xy removed
  auto dist_without = [&](Vertex x, Vertex y, Vertex a, Vertex b) {
    int px = pos(x), py = pos(y);
    // the path runs from the end after the removed edge around to the other
    int first = (px + 1) % k == py ? py : px;
    auto lin = [&](Vertex v) { return ((pos(v) - first) % k + k) % k; };
    return std::abs(lin(a) - lin(b));
  };
  std::vector<EdgeId> rule_choices;
  std::vector<std::pair<std::pair<Vertex, Vertex>, std::pair<Vertex, Vertex>>> roles;
  for (auto [p, q] : {std::pair{a1, a2}, std::pair{a2, a1}})
    for (auto first : {p, std::pair{p.second, p.first}})
      for (auto second : {q, std::pair{q.second, q.first}}) roles.push_back({first, second});
  for (auto [first, second] : roles) {
    auto [u1, v1] = first;
    auto [u2, v2] = second;
    if (u1 == v1 || u2 == v2) continue;
    if (pos(u1) >= k || pos(v1) >= k || pos(u2) >= k || pos(v2) >= k) continue;
    if (adjacent(u1, v1)) {
      if (auto e = edge_in(g, f, u1, v1)) rule_choices.push_back(*e);
    }
    if (adjacent(u1, v2) && dist_without(u1, v2, u1, u2) <= dist_without(u1, v2, u1, v1)) {
      if (auto e = edge_in(g, f, u1, v2)) rule_choices.push_back(*e);
    }
  }
  for (EdgeId e : rule_choices) {
    if (single_2ec(g, set_difference(f, {e}))) return e;
    if (recheck_failed) *recheck_failed = true;
  }
  return std::nullopt;
}

namespace {

struct GlueSearch {
  const Graph& g;
  const EdgeSet& s;
  const GlueContext& ctx;
  Verifier ver;
  Monitors& mon;
  std::optional<GlueMove> found;

  GlueSearch(const Graph& graph, const EdgeSet& cover, const GlueContext& c, Monitors& m)
      : g(graph), s(cover), ctx(c), ver(graph, cover), mon(m) {}

  bool attempt(const EdgeSet& next, const std::string& rule, const std::string& note = {}) {
    if (found) return true;
    found = ver.check(next, rule, note);
    return found.has_value();
  }

  // Deletes one edge of c1's cycle by the distance rule, then verifies.
  bool attempt_with_shortcut(EdgeSet next, int c1, std::pair<Vertex, Vertex> p1, std::pair<Vertex, Vertex> p2,
                             const std::string& rule) {
    if (found) return true;
    CoverStructure ns = analyze_cover(g, next);
    if (ns.num_bridges != 0) return false;
    Vertex rep = ctx.cg.members[c1].front();
    const EdgeSet& comp = ns.components[ns.component_of[rep]].edges;
    std::vector<Vertex> order = cycle_order(g, ctx.cg.comp_edges[c1]);
    ++mon.shortcut_checks;
    bool failed = false;
    auto e = shortcut_edge(g, comp, order, p1, p2, &failed);
    if (failed) {
      ++mon.shortcut_failures;
      mon.counterexamples.push_back("shortcut edge failed the 2EC recheck\n" + dump(g, next));
    }
    if (!e) return false;
    return attempt(set_difference(next, {*e}), rule);
  }

  EdgeSet without(int node) const { return set_difference(s, ctx.cg.comp_edges[node]); }

  // Replace a small cycle on a cycle through the anchor by a Hamiltonian
  // path between its two attachments.
  bool hamiltonian_replacement(int c1, bool need_adjacent, const std::string& rule) {
    int b = ctx.anchor_block;
    return each_shortcut_cycle(g, ctx, b, c1, ctx.anchor, -1, need_adjacent, false, [&](const ShortcutCycle& sc) {
      EdgeSet next = set_union(set_union(without(c1), cycle_edges(sc.cycle)), path_edges(g, sc.ham_path));
      return attempt(next, rule);
    });
  }

  // Second block through c1 after a first cycle f met c1 at p1: a cycle f2
  // in another block meets c1 at w1 and one more vertex, then one edge of c1
  // is shortcut. Used for non-local 5-cycles and 6/7-cycles.
  bool second_block(const EdgeSet& base, int c1, std::pair<Vertex, Vertex> p1, const std::vector<Vertex>& w_choices,
                    int fixed_target, bool size3, const std::string& rule) {
    for (int b2 : ctx.blocks_of[c1]) {
      if (b2 == ctx.anchor_block) continue;
      for (Vertex w1 : w_choices) {
        std::vector<int> targets;
        if (fixed_target >= 0) {
          if (in_block(ctx, b2, fixed_target)) targets.push_back(fixed_target);
        } else {
          for (const auto& inc : g.incident(w1)) {
            int t = ctx.cg.vmap[inc.nbr];
            if (t != c1 && in_block(ctx, b2, t)) targets.push_back(t);
          }
          targets = make_set(targets);
        }
        for (int t : targets) {
          bool c4 = ctx.size[t] == 4 && ctx.is_cycle[t];
          if (c4) {
            if (each_shortcut_cycle(g, ctx, b2, t, c1, w1, false, true, [&](const ShortcutCycle& sc) {
                  int pc = position_of(sc.cycle, c1);
                  Vertex x1 = other_of(attachments(ctx, sc.cycle, pc), w1);
                  EdgeSet next = set_union(set_union(set_difference(base, ctx.cg.comp_edges[t]),
                                                     cycle_edges(sc.cycle)),
                                           path_edges(g, sc.ham_path));
                  return attempt_with_shortcut(next, c1, p1, {w1, x1}, rule);
                }))
              return true;
          }
          int min_len = size3 ? std::min(3, static_cast<int>(ctx.blocks[b2].vertices.size())) : 2;
          if (each_nice_cycle(ctx, b2, c1, t, w1, -1, min_len, !size3, [&](const Cycle& f2) {
                Vertex x1 = other_of(attachments(ctx, f2, 0), w1);
                EdgeSet next = set_union(base, cycle_edges(f2));
                return attempt_with_shortcut(next, c1, p1, {w1, x1}, rule);
              }))
            return true;
        }
      }
    }
    return false;
  }

  bool plain_cycles(int start, int block, int min_len, const std::string& rule) {
    BlockCycles bc(ctx, block);
    return bc.run(start, min_len, [&](const Cycle& f) { return attempt(set_union(s, cycle_edges(f)), rule); });
  }
};

Monitors& scratch_or(Monitors* m, Monitors& scratch) { return m ? *m : scratch; }

}  // namespace

std::optional<GlueMove> glue_adjacent(const Graph& g, const EdgeSet& s, const GlueContext& ctx, int c1) {
  if (ctx.anchor_block < 0 || c1 == ctx.anchor || !in_block(ctx, ctx.anchor_block, c1)) return std::nullopt;
  if (ctx.size[c1] > 7 || !ctx.is_cycle[c1]) return std::nullopt;
  Monitors scratch;
  GlueSearch gs(g, s, ctx, scratch);
  gs.hamiltonian_replacement(c1, true, "glue_adjacent");
  return gs.found;
}

std::optional<GlueMove> glue_c4_local_c5(const Graph& g, const EdgeSet& s, const GlueContext& ctx, int c1) {
  if (ctx.anchor_block < 0 || c1 == ctx.anchor || !in_block(ctx, ctx.anchor_block, c1)) return std::nullopt;
  bool c4 = ctx.size[c1] == 4 && ctx.is_cycle[c1];
  bool local_c5 = ctx.size[c1] == 5 && ctx.is_cycle[c1] && !ctx.non_local[c1];
  if (!c4 && !local_c5) return std::nullopt;
  Monitors scratch;
  GlueSearch gs(g, s, ctx, scratch);
  gs.hamiltonian_replacement(c1, false, "glue_c4_local_c5");
  return gs.found;
}

std::optional<GlueMove> glue_nonlocal_c5(const Graph& g, const EdgeSet& s, const GlueContext& ctx, int c1,
                                         Monitors* monitors) {
  if (ctx.anchor_block < 0 || c1 == ctx.anchor || !in_block(ctx, ctx.anchor_block, c1)) return std::nullopt;
  if (ctx.size[c1] != 5 || !ctx.is_cycle[c1] || !ctx.non_local[c1]) return std::nullopt;
  Monitors scratch;
  Monitors& mon = scratch_or(monitors, scratch);
  const VertexSet& bv = ctx.blocks[ctx.anchor_block].vertices;
  int nb = static_cast<int>(bv.size());
  if (nb == 2) {
    ++mon.impossible_branches;
    mon.counterexamples.push_back("non-local 5-cycle in a two-node block\n" + dump(g, s));
    return std::nullopt;
  }
  if (nb == 3) {
    for (int x : bv)
      if (x != c1 && x != ctx.anchor && ctx.size[x] == 5 && ctx.is_cycle[x]) {
        ++mon.impossible_branches;
        mon.counterexamples.push_back("two 5-cycles in a three-node block\n" + dump(g, s));
        return std::nullopt;
      }
  }
  GlueSearch gs(g, s, ctx, mon);
  BlockCycles bc(ctx, ctx.anchor_block);
  bc.run(c1, std::min(3, nb), [&](const Cycle& f) {
    if (position_of(f, ctx.anchor) < 0) return false;
    EdgeSet base = set_union(s, cycle_edges(f));
    if (gs.attempt(base, "glue_nonlocal_c5_union")) return true;
    auto p1 = attachments(ctx, f, 0);
    if (p1.first == p1.second) return false;
    std::vector<Vertex> ws;
    for (Vertex x : ctx.cg.members[c1])
      if (x != p1.first && x != p1.second) ws.push_back(x);
    return gs.second_block(base, c1, p1, ws, -1, false, "glue_nonlocal_c5");
  });
  return gs.found;
}

namespace {

// Last-resort constructions for a 6-cycle next to the anchor whose escape
// block holds a 5-cycle: two-edge reroutes through the 5-cycle, the
// matching variant, and the double pendant 5-cycle rewiring.
bool six_cycle_reroutes(GlueSearch& gs, int c1, int t, const std::vector<Vertex>& order, Vertex a1, Vertex a2,
                        Vertex a3, EdgeId e_a1, EdgeId e_a3) {
  const Graph& g = gs.g;
  const GlueContext& ctx = gs.ctx;
  const EdgeSet& s = gs.s;
  const EdgeSet& c1e = ctx.cg.comp_edges[c1];
  int k = static_cast<int>(order.size());
  // a1..a6 along the cycle starting at a1 through a2
  int p1 = static_cast<int>(std::find(order.begin(), order.end(), a1) - order.begin());
  int dir = order[(p1 + 1) % k] == a2 ? 1 : k - 1;
  std::vector<Vertex> a(7);
  for (int i = 1; i <= 6; ++i) a[i] = order[(p1 + dir * (i - 1)) % k];
  if (a[3] != a3) return false;
  auto cyc = [&](int i, int j) { return *edge_in(g, c1e, a[i], a[j]); };
  auto edges_to = [&](Vertex x, int node) {
    std::vector<std::pair<EdgeId, Vertex>> out;
    for (const auto& inc : g.incident(x))
      if (ctx.cg.vmap[inc.nbr] == node) out.push_back({g.edge_at(inc.index).id, inc.nbr});
    return out;
  };
  for (auto [e21, b1] : edges_to(a[2], t)) {
    for (int i : {4, 6}) {
      for (auto [ei, b2] : edges_to(a[i], t)) {
        EdgeSet rem = i == 4 ? make_set({cyc(1, 2), cyc(3, 4)}) : make_set({cyc(3, 2), cyc(1, 6)});
        EdgeSet next = set_union(set_difference(s, rem), make_set({e_a1, e_a3, e21, ei}));
        if (gs.attempt(next, "glue_c6_c7_reroute")) return true;
      }
    }
  }
  // matching {a2 b, a b'} with bb' an edge of the 5-cycle
  for (EdgeId bb : ctx.cg.comp_edges[t]) {
    const Edge& e = g.edge(bb);
    for (auto [b, b2] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      auto ab = g.edge_between(a2, b);
      if (!ab) continue;
      for (Vertex x : ctx.cg.members[c1]) {
        if (x == a2) continue;
        auto xb = g.edge_between(x, b2);
        if (!xb) continue;
        EdgeSet next = set_union(set_difference(s, {bb}), make_set({e_a1, e_a3, *ab, *xb}));
        if (gs.attempt_with_shortcut(next, c1, {a1, a3}, {a2, x}, "glue_c6_c7_matching")) return true;
      }
    }
  }
  // two 5-cycles hanging off c1: open one edge of each and hook both ends
  // into c1
  struct Hook {
    int node;
    EdgeId cut;
    EdgeId e1;
    EdgeId e2;
  };
  std::vector<Hook> hooks;
  for (int x = 0; x < ctx.num_nodes(); ++x) {
    if (x == c1 || x == ctx.anchor || ctx.size[x] != 5 || !ctx.is_cycle[x]) continue;
    for (EdgeId yz : ctx.cg.comp_edges[x]) {
      auto to_c1 = [&](Vertex y) -> std::optional<EdgeId> {
        for (const auto& inc : g.incident(y))
          if (ctx.cg.vmap[inc.nbr] == c1) return g.edge_at(inc.index).id;
        return std::nullopt;
      };
      auto e1 = to_c1(g.edge(yz).u), e2 = to_c1(g.edge(yz).v);
      if (e1 && e2) hooks.push_back({x, yz, *e1, *e2});
    }
  }
  for (size_t i = 0; i < hooks.size(); ++i)
    for (size_t j = i + 1; j < hooks.size(); ++j) {
      if (hooks[i].node == hooks[j].node) continue;
      EdgeSet next = set_union(set_difference(s, make_set({hooks[i].cut, hooks[j].cut})),
                               make_set({hooks[i].e1, hooks[i].e2, hooks[j].e1, hooks[j].e2}));
      if (gs.attempt(next, "glue_two_pendant_c5")) return true;
    }
  return false;
}

}  // namespace

std::optional<GlueMove> glue_c6_c7(const Graph& g, const EdgeSet& s, const GlueContext& ctx, int c1,
                                   Monitors* monitors) {
  if (ctx.anchor_block < 0 || c1 == ctx.anchor || !in_block(ctx, ctx.anchor_block, c1)) return std::nullopt;
  if (ctx.blocks[ctx.anchor_block].vertices.size() != 2 || ctx.size[c1] < 6) return std::nullopt;
  Monitors scratch;
  Monitors& mon = scratch_or(monitors, scratch);
  GlueSearch gs(g, s, ctx, mon);
  int c = ctx.anchor;
  if (ctx.size[c1] >= 8) {
    EdgeSet between;
    for (EdgeId id : ctx.blocks[ctx.anchor_block].edges) between.push_back(id);
    between = make_set(between);
    for (size_t i = 0; i < between.size(); ++i)
      for (size_t j = i + 1; j < between.size(); ++j)
        if (gs.attempt(set_union(s, make_set({between[i], between[j]})), "glue_c6_c7_two_edges")) return gs.found;
    return std::nullopt;
  }
  if (auto m = glue_adjacent(g, s, ctx, c1)) return m;
  auto match = find_cross_matching(g, ctx.cg.members[c1], ctx.cg.members[c], 3);
  if (!match) return std::nullopt;
  std::vector<std::pair<Vertex, EdgeId>> matched;  // c1 vertex and its matching edge
  for (int i = 0; i < 3; ++i) {
    const Edge& e = g.edge((*match)[i]);
    matched.push_back({ctx.cg.vmap[e.u] == c1 ? e.u : e.v, e.id});
  }
  std::vector<Vertex> order = cycle_order(g, ctx.cg.comp_edges[c1]);
  for (Vertex x1 : ctx.cg.members[c1]) {
    if (std::any_of(matched.begin(), matched.end(), [&](auto& p) { return p.first == x1; })) continue;
    for (const auto& inc : g.incident(x1)) {
      int t0 = ctx.cg.vmap[inc.nbr];
      if (t0 == c || t0 == c1) continue;
      EdgeId esc = g.edge_at(inc.index).id;
      int b2 = -1;
      for (int b : ctx.blocks_of[c1])
        if (contains(make_set(ctx.blocks[b].edges), esc)) b2 = b;
      if (b2 < 0) continue;
      // the escape block's smallest component other than c1
      int t = -1;
      for (int x : ctx.blocks[b2].vertices)
        if (x != c1 && (t < 0 || ctx.size[x] < ctx.size[t])) t = x;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          auto [a, ea] = matched[i];
          auto [b, eb] = matched[j];
          if (cycle_distance(order, a, x1) + cycle_distance(order, x1, b) != cycle_distance(order, a, b)) continue;
          EdgeSet base = set_union(s, make_set({ea, eb}));
          if (gs.second_block(base, c1, {a, b}, {x1}, t, true, "glue_c6_c7")) return gs.found;
          if (ctx.size[c1] == 6 && ctx.size[t] == 5 && ctx.is_cycle[t] &&
              six_cycle_reroutes(gs, c1, t, order, a, x1, b, ea, eb))
            return gs.found;
        }
    }
  }
  return std::nullopt;
}

namespace {

// Broad search used only when every direct construction failed: cycles
// through a node of any block, combined with a plain union, a Hamiltonian
// replacement of one small cycle on it, or the deletion of one edge of a
// small component on it.
bool fallback_search(GlueSearch& gs) {
  const GlueContext& ctx = gs.ctx;
  const Graph& g = gs.g;
  std::vector<int> order;
  if (ctx.anchor_block >= 0) order.push_back(ctx.anchor_block);
  for (int b = 0; b < static_cast<int>(ctx.blocks.size()); ++b)
    if (b != ctx.anchor_block) order.push_back(b);
  for (int b : order) {
    int start = in_block(ctx, b, ctx.anchor) ? ctx.anchor : ctx.blocks[b].vertices.front();
    BlockCycles bc(ctx, b);
    if (bc.run(start, 2, [&](const Cycle& f) {
          EdgeSet base = set_union(gs.s, cycle_edges(f));
          if (gs.attempt(base, "fallback_cycle")) return true;
          for (int p = 0; p < static_cast<int>(f.nodes.size()); ++p) {
            int x = f.nodes[p];
            if (ctx.size[x] > 7 || !ctx.is_cycle[x]) continue;
            auto at = attachments(ctx, f, p);
            if (at.first != at.second) {
              if (auto ham = hamiltonian_path(g, ctx.cg.members[x], at.first, at.second)) {
                EdgeSet next = set_union(set_union(set_difference(gs.s, ctx.cg.comp_edges[x]), cycle_edges(f)),
                                         path_edges(g, *ham));
                if (gs.attempt(next, "fallback_hamiltonian")) return true;
              }
            }
            for (EdgeId e : ctx.cg.comp_edges[x])
              if (gs.attempt(set_difference(base, {e}), "fallback_shortcut")) return true;
          }
          return false;
        }))
      return true;
  }
  return false;
}

}  // namespace

GlueMove glue_step(const Graph& g, const EdgeSet& s, Monitors* monitors) {
  GlueContext ctx = make_glue_context(g, s);
  if (ctx.anchor_block < 0) throw std::logic_error("glue_step: the cover is already a single component");
  Monitors scratch;
  Monitors& mon = scratch_or(monitors, scratch);
  int b = ctx.anchor_block;
  const VertexSet& bv = ctx.blocks[b].vertices;

  // runtime checks of the matching and Hamiltonian-pair guarantees
  for (int x : bv) {
    ++mon.matching_checks;
    auto m = local_3_matching(g, ctx, b, {x});
    bool ok = m && m->size() == 3;
    if (ok) {
      VertexSet seen;
      for (EdgeId id : *m) {
        const Edge& e = g.edge(id);
        seen.push_back(e.u);
        seen.push_back(e.v);
        ok = ok && ((ctx.cg.vmap[e.u] == x) != (ctx.cg.vmap[e.v] == x));
      }
      ok = ok && make_set(seen).size() == 6;
    }
    if (!ok) {
      ++mon.matching_failures;
      mon.counterexamples.push_back("no 3-matching around a component of the anchor block\n" + dump(g, s));
    }
  }
  for (int x : bv) {
    if (!ctx.is_cycle[x] || ctx.size[x] > 7) continue;
    ++mon.ham_pair_checks;
    int have = static_cast<int>(hamiltonian_pairs(g, ctx.cg.members[x]).size());
    if (have < hamiltonian_pair_guarantee(ctx.size[x])) {
      ++mon.ham_pair_failures;
      mon.counterexamples.push_back("too few Hamiltonian pairs on a small cycle\n" + dump(g, s));
    }
  }

  for (int x : bv)
    if (x != ctx.anchor)
      if (auto m = glue_adjacent(g, s, ctx, x)) return *m;
  for (int x : bv)
    if (x != ctx.anchor)
      if (auto m = glue_c4_local_c5(g, s, ctx, x)) return *m;
  for (int x : bv)
    if (x != ctx.anchor && ctx.size[x] == 5 && ctx.is_cycle[x] && ctx.non_local[x])
      if (auto m = glue_nonlocal_c5(g, s, ctx, x, &mon)) return *m;
  if (bv.size() == 2) {
    int other = bv[0] == ctx.anchor ? bv[1] : bv[0];
    if (auto m = glue_c6_c7(g, s, ctx, other, &mon)) return *m;
  }
  GlueSearch gs(g, s, ctx, mon);
  if (gs.plain_cycles(ctx.anchor, b, std::min(3, static_cast<int>(bv.size())), "glue_cycle")) return *gs.found;
  if (fallback_search(gs)) {
    ++mon.fallback_moves;
    gs.found->fallback = true;
    return *gs.found;
  }
  mon.counterexamples.push_back("gluing found no valid move\n" + dump(g, s));
  throw std::runtime_error("gluing found no valid move");
}

CanonicalCover glue_all(const Graph& g, const CanonicalCover& cover, SolveTrace* trace) {
  EdgeSet s = cover.edges;
  Monitors scratch;
  Monitors* mon = trace ? &trace->monitors : &scratch;
  while (analyze_cover(g, s).components.size() > 1) {
    GlueMove m = glue_step(g, s, mon);
    EdgeSet next = set_union(set_difference(s, m.removed), m.added);
    if (trace) {
      MoveRecord r = make_move_record(g, "glue", m.rule, s, next);
      r.flagged = m.fallback;
      r.note = m.note;
      trace->moves.push_back(std::move(r));
    }
    s = std::move(next);
  }
  return make_canonical_cover(g, s);
}

}  // namespace tecss
