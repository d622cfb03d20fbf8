#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tecss/cover.hpp"

namespace tecss {

namespace {

struct Candidate {
  EdgeSet removed;
  EdgeSet added;
  const char* rule;
};

struct Evaluated {
  EdgeSet next;
  CoverStructure st;
  Rational cost{0};
};

using Sink = std::function<bool(Candidate)>;  // returns true to stop

std::string cover_dump(const Graph& g, const EdgeSet& s) {
  std::ostringstream os;
  os << describe(g) << "cover:";
  for (EdgeId id : s) os << ' ' << id;
  return os.str();
}

struct Canonicalizer {
  const Graph& g;
  SolveTrace* trace;
  EdgeSet s;
  CoverStructure st;
  Rational current_cost{0};
  std::vector<char> in_s;

  Canonicalizer(const Graph& graph, const EdgeSet& h, SolveTrace* t) : g(graph), trace(t), s(h) { refresh(); }

  void refresh() {
    st = analyze_cover(g, s);
    current_cost = Rational(static_cast<long long>(s.size())) + credits(st).total;
    in_s.assign(g.num_edges(), 0);
    for (EdgeId id : s) in_s[g.index_of(id)] = 1;
  }

  bool in_cover(EdgeId id) const { return in_s[g.index_of(id)] != 0; }

  std::tuple<int, int, int> potential(const EdgeSet& x, const CoverStructure& xs) const {
    return {static_cast<int>(x.size()), static_cast<int>(xs.components.size()), xs.num_bridges};
  }

  std::optional<Evaluated> evaluate(const Candidate& c) const {
    if (c.added.size() > c.removed.size()) return std::nullopt;
    // degree check on the touched vertices only
    std::vector<std::pair<Vertex, int>> delta;
    auto bump = [&](Vertex x, int d) {
      for (auto& [v, k] : delta)
        if (v == x) {
          k += d;
          return;
        }
      delta.push_back({x, d});
    };
    for (EdgeId id : c.removed) {
      bump(g.edge(id).u, -1);
      bump(g.edge(id).v, -1);
    }
    for (EdgeId id : c.added) {
      bump(g.edge(id).u, 1);
      bump(g.edge(id).v, 1);
    }
    for (auto [v, d] : delta) {
      if (d >= 0) continue;
      int deg = 0;
      for (const auto& inc : g.incident(v))
        if (in_s[inc.index]) deg += g.edge_at(inc.index).is_loop() ? 2 : 1;
      if (deg + d < 2) return std::nullopt;
    }
    Evaluated e;
    e.next = set_union(set_difference(s, c.removed), c.added);
    e.st = analyze_cover(g, e.next);
    for (const CoverComponent& comp : e.st.components)
      if (comp.vertices.size() == 3 && comp.is_cycle) return std::nullopt;
    for (const CoverComponent& comp : st.components) {
      int target = e.st.component_of[comp.vertices.front()];
      for (Vertex x : comp.vertices)
        if (e.st.component_of[x] != target) return std::nullopt;
    }
    if (!(potential(e.next, e.st) < potential(s, st))) return std::nullopt;
    e.cost = Rational(static_cast<long long>(e.next.size())) + credits(e.st).total;
    return e;
  }

  // ---- candidate families, each in a fixed order ----

  bool deletions(const Sink& sink) const {
    for (EdgeId id : s)
      if (sink({{id}, {}, "delete_edge"})) return true;
    return false;
  }

  std::vector<EdgeId> cover_edges_at(Vertex x) const {
    std::vector<EdgeId> out;
    for (const auto& inc : g.incident(x))
      if (in_s[inc.index]) out.push_back(g.edge_at(inc.index).id);
    return make_set(out);
  }

  // Add xy, drop one cover edge at x and one at y.
  bool two_for_one(const Sink& sink) const {
    for (const Edge& f : g.edges()) {
      if (f.is_loop() || in_cover(f.id)) continue;
      auto at_u = cover_edges_at(f.u), at_v = cover_edges_at(f.v);
      for (EdgeId a : at_u)
        for (EdgeId b : at_v) {
          if (a == b) continue;
          if (sink({make_set({a, b}), {f.id}, "exchange_two_for_one"})) return true;
        }
    }
    return false;
  }

  bool one_for_one(const Sink& sink) const {
    for (EdgeId e : s)
      for (const Edge& f : g.edges()) {
        if (f.is_loop() || in_cover(f.id)) continue;
        if (sink({{e}, {f.id}, "exchange_one_for_one"})) return true;
      }
    return false;
  }

  // A pendant cycle block of at most 5 edges is replaced by a Hamiltonian
  // path from its attachment vertex plus one edge leaving the block.
  bool pendant_rewires(const Sink& sink) const {
    for (const CoverComponent& c : st.components) {
      if (c.kind != ComponentKind::complex) continue;
      for (const EdgeSet& b : c.blocks) {
        if (b.size() > 5) continue;
        VertexSet vb;
        for (EdgeId id : b) {
          vb.push_back(g.edge(id).u);
          vb.push_back(g.edge(id).v);
        }
        vb = make_set(vb);
        if (vb.size() != b.size()) continue;  // not a cycle
        VertexSet attach;
        for (EdgeId id : c.bridges) {
          const Edge& e = g.edge(id);
          if (contains(vb, e.u)) attach.push_back(e.u);
          if (contains(vb, e.v)) attach.push_back(e.v);
        }
        if (attach.size() != 1) continue;
        Vertex u1 = attach.front();
        for (Vertex v1 : vb) {
          if (v1 == u1) continue;
          auto order = hamiltonian_path(g, vb, u1, v1);
          if (!order) continue;
          EdgeSet path;
          for (size_t i = 0; i + 1 < order->size(); ++i) path.push_back(*g.edge_between((*order)[i], (*order)[i + 1]));
          path = make_set(path);
          for (const auto& inc : g.incident(v1)) {
            if (contains(vb, inc.nbr)) continue;
            EdgeId out = g.edge_at(inc.index).id;
            if (in_cover(out)) continue;
            EdgeSet add = set_union(path, {out});
            if (sink({set_difference(b, add), set_difference(add, b), "rewire_pendant_block"})) return true;
          }
        }
      }
    }
    return false;
  }

  // Up to two removals inside the violating component and up to two
  // additions incident to it.
  bool bounded_exchange(int comp, const Sink& sink, long long cap) const {
    if (comp < 0) return false;
    const CoverComponent& c = st.components[comp];
    std::vector<EdgeId> adds;
    for (Vertex x : c.vertices)
      for (const auto& inc : g.incident(x)) {
        EdgeId id = g.edge_at(inc.index).id;
        if (!in_s[inc.index] && !g.edge_at(inc.index).is_loop()) adds.push_back(id);
      }
    adds = make_set(adds);
    long long seen = 0;
    const EdgeSet& rem = c.edges;
    for (size_t i = 0; i < rem.size(); ++i)
      for (size_t j = i + 1; j < rem.size(); ++j)
        for (size_t a = 0; a < adds.size(); ++a)
          for (size_t b = a + 1; b < adds.size(); ++b) {
            if (++seen > cap) return false;
            if (sink({make_set({rem[i], rem[j]}), make_set({adds[a], adds[b]}), "exchange_search"})) return true;
          }
    return false;
  }

  void apply(const Evaluated& e, const char* rule, bool flagged) {
    if (trace) {
      MoveRecord m = make_move_record(g, "canonicalize", rule, s, e.next);
      m.flagged = flagged;
      if (flagged) m.note = "no cost-preserving exchange available";
      trace->moves.push_back(std::move(m));
    }
    s = e.next;
    refresh();
  }

  void run(const CanonicalizeOptions& opt) {
    for (int moves = 0;; ++moves) {
      CanonicalCheck chk = check_canonical(g, s, st);
      if (chk.ok) return;
      if (chk.property == 0) throw std::invalid_argument("canonicalize: input is not a 2-edge cover");
      if (moves >= opt.max_moves) stall(chk);
      std::optional<std::pair<Evaluated, const char*>> good;
      std::vector<std::pair<Evaluated, const char*>> raising;
      if (search(chk.component, current_cost, good, &raising)) {
        apply(good->first, good->second, false);
        continue;
      }
      // No single exchange keeps the cost; try one that raises it followed
      // by one that brings it back, applied as a single move.
      if (auto pair = two_step(raising)) {
        apply(*pair, "two_step_exchange", false);
        continue;
      }
      if (!raising.empty()) {
        apply(raising.front().first, raising.front().second, true);
        continue;
      }
      stall(chk);
    }
  }

  // First candidate, in family order, whose cost is at most `limit`. The
  // first kMaxRaising candidates above it are kept in `raising`.
  static constexpr size_t kMaxRaising = 64;
  bool search(int component, const Rational& limit, std::optional<std::pair<Evaluated, const char*>>& good,
              std::vector<std::pair<Evaluated, const char*>>* raising) const {
    Sink sink = [&](Candidate c) {
      auto e = evaluate(c);
      if (!e) return false;
      if (e->cost <= limit) {
        good.emplace(std::move(*e), c.rule);
        return true;
      }
      if (raising && raising->size() < kMaxRaising) raising->emplace_back(std::move(*e), c.rule);
      return false;
    };
    return deletions(sink) || two_for_one(sink) || pendant_rewires(sink) || one_for_one(sink) ||
           bounded_exchange(component, sink, 2'000'000);
  }

  std::optional<Evaluated> two_step(const std::vector<std::pair<Evaluated, const char*>>& raising) const {
    for (const auto& [first, rule] : raising) {
      Canonicalizer next(g, first.next, nullptr);
      CanonicalCheck chk = check_canonical(g, next.s, next.st);
      std::optional<std::pair<Evaluated, const char*>> good;
      if (next.search(chk.component, current_cost, good, nullptr)) return std::move(good->first);
    }
    return std::nullopt;
  }

  [[noreturn]] void stall(const CanonicalCheck& chk) {
    std::string dump = cover_dump(g, s);
    if (trace) {
      ++trace->monitors.canonical_stalls;
      trace->monitors.counterexamples.push_back("canonicalize stalled, " + chk.detail + "\n" + dump);
    }
    throw std::runtime_error("canonicalize stalled on a non-canonical cover: " + chk.detail);
  }
};

}  // namespace

CanonicalCover canonicalize(const Graph& g, const EdgeSet& h, SolveTrace* trace, const CanonicalizeOptions& opt) {
  Canonicalizer c(g, h, trace);
  c.run(opt);
  return make_canonical_cover(g, c.s);
}

}  // namespace tecss
