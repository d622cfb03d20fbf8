#include "tecss/reduction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tecss {

int brute_force_threshold(const Rational& alpha) {
  Rational t = Rational(4) / (alpha - Rational(1));
  return static_cast<int>(std::max<long long>(floor_of(t), 5));
}

int contract_threshold(const Rational& alpha) {
  return static_cast<int>(floor_of(Rational(2) / (alpha - Rational(1))));
}

int structured_min_vertices(const Rational& alpha) {
  Rational t = Rational(4) / (alpha - Rational(1));
  long long f = floor_of(t);
  return static_cast<int>(Rational(f) == t ? f : f + 1);
}

CutPartition partition_non_isolating(const Graph& g, Vertex u, Vertex v) {
  if (g.num_vertices() < 6) throw std::invalid_argument("partition_non_isolating: fewer than 6 vertices");
  int n = g.num_vertices();
  std::vector<int> label(n, -1);
  label[u] = label[v] = -2;
  std::vector<VertexSet> comps;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    int c = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<Vertex> stack{s};
    label[s] = c;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      comps[c].push_back(x);
      for (const auto& inc : g.incident(x))
        if (label[inc.nbr] == -1) {
          label[inc.nbr] = c;
          stack.push_back(inc.nbr);
        }
    }
  }
  for (auto& c : comps) std::sort(c.begin(), c.end());
  int k = static_cast<int>(comps.size());
  if (k < 2) throw std::invalid_argument("partition_non_isolating: not a 2-vertex cut");
  // stable by size keeps the smallest-vertex order among equal sizes
  std::stable_sort(comps.begin(), comps.end(), [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
  CutPartition p;
  p.u = std::min(u, v);
  p.v = std::max(u, v);
  if (k == 2) {
    if (comps[0].size() < 2) throw std::invalid_argument("partition_non_isolating: cut is isolating");
    p.v1 = comps[0];
    p.v2 = comps[1];
  } else {
    p.v1 = set_union(comps[0], comps[1]);
    for (int i = 2; i < k; ++i) p.v2 = set_union(p.v2, comps[i]);
    if (p.v2.size() < 2) throw std::invalid_argument("partition_non_isolating: degenerate split");
  }
  if (p.v1.size() > p.v2.size()) std::swap(p.v1, p.v2);
  return p;
}

namespace {

OracleBudget uncapped(OracleBudget b) {
  b.vertex_cap = 1 << 20;
  return b;
}

struct Side {
  Graph g;
  Vertex u, v;  // local labels
};

Side make_side(const Graph& g, const CutPartition& cut, const VertexSet& part) {
  VertexSet w = set_union(part, make_set({cut.u, cut.v}));
  std::vector<Vertex> local;
  Side s{induced_subgraph(g, w, &local), 0, 0};
  s.u = local[cut.u];
  s.v = local[cut.v];
  return s;
}

}  // namespace

EdgeSet opt_across_cut(const Graph& g, const CutPartition& cut, const OracleBudget& budget) {
  OracleBudget b = uncapped(budget);
  Side s1 = make_side(g, cut, cut.v1), s2 = make_side(g, cut, cut.v2);
  auto ab1 = opt_type_ab(s1.g, s1.u, s1.v, b), ab2 = opt_type_ab(s2.g, s2.u, s2.v, b);
  std::optional<EdgeSet> a1, a2;
  if (is_2ec(s1.g)) a1 = min_2ecss(s1.g, b);
  if (is_2ec(s2.g)) a2 = min_2ecss(s2.g, b);
  std::optional<EdgeSet> best;
  auto offer = [&](const std::optional<EdgeSet>& x, const std::optional<EdgeSet>& y) {
    if (!x || !y) return;
    EdgeSet u = set_union(*x, *y);
    if (!best || u.size() < best->size()) best = u;
  };
  offer(ab1, ab2);
  // a type-C side only pays off when it beats the side's A/B optimum
  auto worth_c = [&](const Side& s, const std::optional<EdgeSet>& other_a) {
    if (!other_a) return false;
    size_t lb_c = s.g.num_vertices() - 1;
    return !best || lb_c + other_a->size() < best->size();
  };
  if (worth_c(s2, a1)) offer(a1, opt_type(s2.g, s2.u, s2.v, TypeClass::C, nullptr, -1, -1, b));
  if (worth_c(s1, a2)) offer(opt_type(s1.g, s1.u, s1.v, TypeClass::C, nullptr, -1, -1, b), a2);
  if (!best) throw InfeasibleError("no 2EC spanning subgraph across the cut");
  return *best;
}

namespace {

struct Reducer {
  const StructuredSolver& alg;
  const ReduceOptions& opt;
  ReductionTrace trace;
  EdgeId next_dummy = 1 << 30;

  size_t log(const std::string& rule, int depth, const Graph& g, EdgeSet patch = {}, std::string note = {}) {
    trace.steps.push_back({rule, depth, g.num_vertices(), g.num_edges(), std::move(patch), std::move(note)});
    return trace.steps.size() - 1;
  }

  EdgeId fresh_dummy(const Graph& g) {
    next_dummy = std::max(next_dummy, g.max_id() + 1);
    return next_dummy++;
  }

  void check(const Graph& g, const EdgeSet& s, const char* where) {
    if (!is_2ec_subset(g, s))
      throw std::logic_error(std::string("reduce: non-2EC result after ") + where + "\n" + describe(g));
  }

  // Smallest set F of edges of g outside s (size <= limit) with s + F 2EC.
  std::optional<EdgeSet> patch(const Graph& g, const EdgeSet& s, int limit) {
    if (is_2ec_subset(g, s)) return EdgeSet{};
    EdgeSet rest = set_difference(g.edge_ids(), s);
    if (limit >= 1)
      for (EdgeId e : rest)
        if (is_2ec_subset(g, set_union(s, {e}))) return EdgeSet{e};
    if (limit >= 2)
      for (size_t i = 0; i < rest.size(); ++i)
        for (size_t j = i + 1; j < rest.size(); ++j)
          if (is_2ec_subset(g, set_union(s, {rest[i], rest[j]}))) return EdgeSet{rest[i], rest[j]};
    return std::nullopt;
  }

  EdgeSet run(const Graph& g, int depth) {
    int n = g.num_vertices();
    if (n <= brute_force_threshold(opt.alpha)) {
      log("brute_force", depth, g);
      return min_2ecss(g, opt.budget);
    }

    VertexSet cuts = cut_vertices(g);
    if (!cuts.empty()) {
      Vertex v = cuts.front();
      int count = 0;
      std::vector<int> label;
      {
        // components of g - v
        Graph h(n);
        for (const auto& e : g.edges())
          if (e.u != v && e.v != v) h.add_edge(e.u, e.v, e.id);
        label = component_labels(h, &count);
      }
      int first = v == 0 ? 1 : 0;
      VertexSet v1{v}, v2{v};
      for (Vertex x = 0; x < n; ++x)
        if (x != v) (label[x] == label[first] ? v1 : v2).push_back(x);
      v1 = make_set(v1);
      v2 = make_set(v2);
      log("one_cut", depth, g, {}, "v=" + std::to_string(v));
      EdgeSet s = set_union(run(induced_subgraph(g, v1), depth + 1), run(induced_subgraph(g, v2), depth + 1));
      check(g, s, "one_cut");
      return s;
    }

    {
      EdgeSet removed;
      std::map<std::pair<int, int>, int> seen;
      for (const auto& e : g.edges()) {
        if (e.is_loop()) {
          removed.push_back(e.id);
          continue;
        }
        auto key = std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
        if (seen.count(key)) removed.push_back(e.id);
        else seen[key] = e.id;
      }
      if (!removed.empty()) {
        log("parallel_loop", depth, g, removed);
        EdgeSet s = run(subgraph(g, set_difference(g.edge_ids(), removed)), depth + 1);
        check(g, s, "parallel_loop");
        return s;
      }
    }

    if (auto e = find_irrelevant_edge(g)) {
      log("irrelevant", depth, g, {*e});
      EdgeSet s = run(subgraph(g, set_difference(g.edge_ids(), {*e})), depth + 1);
      check(g, s, "irrelevant");
      return s;
    }

    if (auto h = find_contractible_subgraph(g, opt.alpha, opt.contract_budget)) {
      VertexSet w;
      for (EdgeId id : *h) {
        w.push_back(g.edge(id).u);
        w.push_back(g.edge(id).v);
      }
      w = make_set(w);
      log("contract", depth, g, *h);
      Contraction c = contract(g, w);
      EdgeSet s = set_union(*h, run(c.graph, depth + 1));
      check(g, s, "contract");
      return s;
    }

    for (const TwoCut& tc : two_vertex_cuts(g)) {
      if (tc.isolating) continue;
      return two_cut(g, partition_non_isolating(g, tc.u, tc.v), depth);
    }

    log("dispatch_alg", depth, g);
    EdgeSet s = alg(g);
    check(g, s, "dispatch_alg");
    return s;
  }

  EdgeSet two_cut(const Graph& g, const CutPartition& cut, int depth) {
    Side s1 = make_side(g, cut, cut.v1), s2 = make_side(g, cut, cut.v2);
    std::string note = "u=" + std::to_string(cut.u) + " v=" + std::to_string(cut.v);
    if (s2.g.num_vertices() <= static_cast<int>(floor_of(Rational(4) / (opt.alpha - Rational(1))))) {
      log("brute_force", depth, g, {}, note + " across cut");
      EdgeSet s = opt_across_cut(g, cut, opt.budget);
      check(g, s, "two_cut brute force");
      return s;
    }
    if (s1.g.num_vertices() > contract_threshold(opt.alpha)) {
      size_t step = log("two_cut_both_big", depth, g, {}, note);
      EdgeSet a = run(contract(s1.g, {s1.u, s1.v}).graph, depth + 1);
      EdgeSet b = run(contract(s2.g, {s2.u, s2.v}).graph, depth + 1);
      EdgeSet s = set_union(a, b);
      auto f = patch(g, s, 2);
      if (!f) throw std::logic_error("reduce: no patch of size <= 2 for the both-big branch");
      trace.steps[step].patch = *f;
      s = set_union(s, *f);
      check(g, s, "two_cut_both_big");
      return s;
    }
    OracleBudget b = uncapped(opt.budget);
    auto o1b = opt_type(s1.g, s1.u, s1.v, TypeClass::B, &s2.g, s2.u, s2.v, b);
    auto o1c = opt_type(s1.g, s1.u, s1.v, TypeClass::C, &s2.g, s2.u, s2.v, b);
    if (o1c && (!o1b || o1c->size() + 1 <= o1b->size())) {
      Graph g2 = s2.g;
      EdgeId d = fresh_dummy(g);
      g2.add_edge(s2.u, s2.v, d);
      size_t step = log("two_cut_type_C", depth, g, {}, note);
      EdgeSet s = set_union(*o1c, set_difference(run(g2, depth + 1), {d}));
      auto f = patch(g, s, 1);
      if (!f) throw std::logic_error("reduce: no patch of size <= 1 for the type-C branch");
      trace.steps[step].patch = *f;
      s = set_union(s, *f);
      check(g, s, "two_cut_type_C");
      return s;
    }
    if (!o1b) throw std::logic_error("reduce: side 1 admits neither type B nor type C");
    Graph g2 = s2.g;
    Vertex w = g2.add_vertex();
    EdgeId d1 = fresh_dummy(g), d2 = fresh_dummy(g);
    g2.add_edge(s2.u, w, d1);
    g2.add_edge(s2.v, w, d2);
    log("two_cut_type_AB", depth, g, {}, note);
    EdgeSet s = set_union(*o1b, set_difference(run(g2, depth + 1), {d1, d2}));
    check(g, s, "two_cut_type_AB");
    return s;
  }
};

}  // namespace

ReduceResult reduce(const Graph& g, const StructuredSolver& alg, const ReduceOptions& opt) {
  if (!is_2ec(g)) throw InfeasibleError("input graph is not 2-edge-connected");
  Reducer r{alg, opt, {}};
  ReduceResult res;
  res.edges = r.run(g, 0);
  res.trace = std::move(r.trace);
  return res;
}

EdgeSet handle_two_cut(const Graph& g, const CutPartition& cut, const StructuredSolver& alg,
                       const ReduceOptions& opt, ReductionTrace* trace) {
  Reducer r{alg, opt, {}};
  EdgeSet s = r.two_cut(g, cut, 0);
  if (trace) *trace = std::move(r.trace);
  return s;
}

StructuredVerdict is_structured(const Graph& g, const Rational& alpha, long long contract_budget) {
  StructuredVerdict v;
  if (!g.is_simple()) {
    v.reason = "not simple";
    return v;
  }
  if (!is_2vc(g)) {
    v.reason = "not 2-vertex-connected";
    return v;
  }
  if (g.num_vertices() < structured_min_vertices(alpha)) {
    v.reason = "fewer than " + std::to_string(structured_min_vertices(alpha)) + " vertices";
    return v;
  }
  if (auto e = find_irrelevant_edge(g)) {
    v.reason = "irrelevant edge";
    v.edge = e;
    return v;
  }
  for (const TwoCut& tc : two_vertex_cuts(g))
    if (!tc.isolating) {
      v.reason = "non-isolating 2-vertex cut";
      v.cut = std::make_pair(tc.u, tc.v);
      return v;
    }
  if (auto h = find_contractible_subgraph(g, alpha, contract_budget)) {
    v.reason = "contractible subgraph";
    v.subgraph = h;
    return v;
  }
  v.structured = true;
  return v;
}

}  // namespace tecss
