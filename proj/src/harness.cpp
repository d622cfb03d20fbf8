#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "tecss/harness.hpp"

namespace tecss {

Rational parse_rational(const std::string& text) {
  auto bad = [&]() { return std::invalid_argument("not a rational number: '" + text + "'"); };
  auto to_ll = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789-+") != std::string::npos) throw bad();
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw bad();
    return v;
  };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long den = to_ll(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(to_ll(text.substr(0, slash)), den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(to_ll(text));
  std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
  bool negative = !whole.empty() && whole[0] == '-';
  long long w = whole.empty() || whole == "-" || whole == "+" ? 0 : to_ll(whole);
  long long scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  Rational r = Rational(std::abs(w)) + Rational(std::stoll(frac), scale);
  return negative ? -r : r;
}

// ---- instances ----

Instance parse_instance(std::istream& in, const std::string& name) {
  Instance inst;
  inst.name = name;
  std::string line;
  int n = -1, m = -1, lineno = 0;
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> edges;
  auto fail = [&](const std::string& why) {
    return ParseError("line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      inst.comments.push_back(rest);
      continue;
    }
    if (tag == "p") {
      if (n >= 0) throw fail("second header");
      if (!(ls >> n >> m) || n < 0 || m < 0) throw fail("bad header");
      continue;
    }
    if (tag == "e") {
      if (n < 0) throw fail("edge before header");
      long long u, v;
      if (!(ls >> u >> v)) throw fail("bad edge line");
      if (u < 0 || v < 0 || u >= n || v >= n) throw fail("vertex out of range");
      if (u == v) throw fail("loop");
      std::pair<int, int> key{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
      if (!seen.insert(key).second) throw fail("duplicate edge");
      edges.push_back({static_cast<int>(u), static_cast<int>(v)});
      std::string extra;
      if (ls >> extra) throw fail("trailing text");
      continue;
    }
    throw fail("unknown line tag '" + tag + "'");
  }
  if (n < 0) throw ParseError("missing header");
  if (static_cast<int>(edges.size()) != m)
    throw ParseError("header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  inst.graph = Graph(n);
  for (auto [u, v] : edges) inst.graph.add_edge(u, v);
  return inst;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_instance(in, path);
}

std::string format_instance(const Graph& g, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const std::string& c : comments) os << "c " << c << '\n';
  os << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) os << "e " << e.u << ' ' << e.v << '\n';
  return os.str();
}

std::string instance_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : format_instance(g)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json instance_json(const Instance& inst) {
  nlohmann::json j;
  j["name"] = inst.name;
  j["n"] = inst.graph.num_vertices();
  j["m"] = inst.graph.num_edges();
  j["hash"] = instance_hash(inst.graph);
  j["comments"] = inst.comments;
  nlohmann::json es = nlohmann::json::array();
  for (const Edge& e : inst.graph.edges()) es.push_back({e.u, e.v});
  j["edges"] = es;
  return j;
}

EdgeSet parse_solution(std::istream& in) {
  EdgeSet out;
  std::string tok;
  while (in >> tok) {
    if (tok.find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad edge id '" + tok + "'");
    out.push_back(std::stoi(tok));
  }
  EdgeSet sorted = make_set(out);
  if (sorted.size() != out.size()) throw ParseError("repeated edge id in solution");
  return sorted;
}

// ---- random source ----

int Rng::uniform(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = eng_();
  while (x >= limit);
  return lo + static_cast<int>(x % span);
}

bool Rng::chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }

// ---- generators ----

namespace {

struct EdgeList {
  int n;
  std::set<std::pair<int, int>> pairs;
  explicit EdgeList(int vertices) : n(vertices) {}
  bool add(int a, int b) {
    if (a == b) return false;
    return pairs.insert({std::min(a, b), std::max(a, b)}).second;
  }
  Graph graph() const {
    Graph g(n);
    for (auto [a, b] : pairs) g.add_edge(a, b);
    return g;
  }
};

void add_cycle(EdgeList& el, const std::vector<int>& order) {
  for (size_t i = 0; i < order.size(); ++i) el.add(order[i], order[(i + 1) % order.size()]);
}

void add_chords(EdgeList& el, const std::vector<int>& verts, int chords, Rng& rng) {
  int k = static_cast<int>(verts.size());
  long long room = static_cast<long long>(k) * (k - 1) / 2 - static_cast<long long>(k);
  chords = static_cast<int>(std::min<long long>(chords, std::max<long long>(room, 0)));
  int tries = 0;
  while (chords > 0 && tries++ < 100000)
    if (el.add(verts[rng.uniform(0, k - 1)], verts[rng.uniform(0, k - 1)])) --chords;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

}  // namespace

Graph gnp_2ec(int n, double p, Rng& rng) {
  if (n < 3) throw std::invalid_argument("gnp_2ec: need at least 3 vertices");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    EdgeList el(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng.chance(p)) el.add(a, b);
    Graph g = el.graph();
    if (is_2ec(g)) return g;
  }
  throw std::invalid_argument("gnp_2ec: no 2EC sample in 1000 attempts; raise p");
}

Graph hamiltonian_plus_chords(int n, int chords, Rng& rng) {
  if (n < 3) throw std::invalid_argument("hamiltonian_plus_chords: need at least 3 vertices");
  EdgeList el(n);
  std::vector<int> order = range(0, n);
  rng.shuffle(order);
  add_cycle(el, order);
  add_chords(el, range(0, n), chords, rng);
  return el.graph();
}

Graph cycle_of_cliques(int n, double extra, Rng& rng) {
  if (n < 6) throw std::invalid_argument("cycle_of_cliques: need at least 6 vertices");
  int size = 4;
  int k = std::max(2, n / size);
  EdgeList el(n);
  std::vector<std::vector<int>> cliques(k);
  for (int v = 0; v < n; ++v) cliques[std::min(v / size, k - 1)].push_back(v);
  for (const auto& c : cliques)
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = i + 1; j < c.size(); ++j) el.add(c[i], c[j]);
  for (int i = 0; i < k; ++i) {
    const auto& a = cliques[i];
    const auto& b = cliques[(i + 1) % k];
    el.add(a[rng.uniform(0, static_cast<int>(a.size()) - 1)], b[rng.uniform(0, static_cast<int>(b.size()) - 1)]);
    for (int x : a)
      for (int y : b)
        if (rng.chance(extra)) el.add(x, y);
  }
  return el.graph();
}

Graph dumbbell(int n, int chords, Rng& rng) {
  if (n < 8) throw std::invalid_argument("dumbbell: need at least 8 vertices");
  int half = n / 2;
  EdgeList el(n);
  std::vector<int> left = range(0, half), right = range(half, n);
  for (auto* side : {&left, &right}) {
    std::vector<int> order = *side;
    rng.shuffle(order);
    add_cycle(el, order);
    add_chords(el, *side, chords / 2, rng);
  }
  // two disjoint edges between the halves: their left ends form a
  // non-isolating 2-vertex cut
  int a1 = left[rng.uniform(0, half - 1)], a2;
  do a2 = left[rng.uniform(0, half - 1)];
  while (a2 == a1);
  int b1 = right[rng.uniform(0, n - half - 1)], b2;
  do b2 = right[rng.uniform(0, n - half - 1)];
  while (b2 == b1);
  el.add(a1, b1);
  el.add(a2, b2);
  return el.graph();
}

Graph structured_stress(int n, double chords, Rng& rng) {
  if (n < 16) throw std::invalid_argument("structured_stress: need at least 16 vertices");
  // a core cycle with chords and satellite cycles of 4 to 7 vertices, each
  // tied to the rest by at least three disjoint edges
  int core = std::max(8, n / 3);
  EdgeList el(n);
  std::vector<int> order = range(0, core);
  rng.shuffle(order);
  add_cycle(el, order);
  add_chords(el, range(0, core), static_cast<int>(std::lround(chords * core)), rng);
  std::vector<std::vector<int>> sats;
  int v = core;
  while (v < n) {
    int len = rng.uniform(4, 7);
    if (n - v - len < 4) len = n - v;
    std::vector<int> c = range(v, v + len);
    add_cycle(el, c);
    sats.push_back(c);
    v += len;
  }
  int placed = core;
  for (const auto& c : sats) {
    std::vector<int> pick = c;
    rng.shuffle(pick);
    std::vector<int> targets;
    for (int i = 0; i < static_cast<int>(pick.size()); ++i) {
      bool must = i < 3;
      if (!must && !rng.chance(0.5)) continue;
      int t;
      int tries = 0;
      do t = rng.uniform(0, placed - 1);
      while (std::find(targets.begin(), targets.end(), t) != targets.end() && ++tries < 100);
      targets.push_back(t);
      el.add(pick[i], t);
    }
    placed += static_cast<int>(c.size());
  }
  return el.graph();
}

Graph generate(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  const std::string& f = spec.family;
  if (f == "gnp_2ec") return gnp_2ec(spec.n, spec.density, rng);
  if (f == "hamiltonian_plus_chords")
    return hamiltonian_plus_chords(spec.n, static_cast<int>(std::lround(spec.density * spec.n)), rng);
  if (f == "cycle_of_cliques") return cycle_of_cliques(spec.n, spec.density, rng);
  if (f == "dumbbell") return dumbbell(spec.n, static_cast<int>(std::lround(spec.density * spec.n)), rng);
  if (f == "structured_stress") return structured_stress(spec.n, spec.density, rng);
  throw std::invalid_argument("unknown generator family '" + f + "'");
}

// ---- baseline ----

EdgeSet baseline_dfs2(const Graph& g) {
  int n = g.num_vertices();
  if (!is_2ec(g)) throw InfeasibleError("graph is not 2-edge-connected");
  if (n <= 1) return {};
  std::vector<int> depth(n, -1), parent_edge(n, -1), order;
  std::vector<size_t> next(n, 0);
  std::vector<int> stack{0};
  depth[0] = 0;
  order.push_back(0);
  while (!stack.empty()) {
    int x = stack.back();
    const auto& inc = g.incident(x);
    if (next[x] == inc.size()) {
      stack.pop_back();
      continue;
    }
    const Incidence& i = inc[next[x]++];
    if (depth[i.nbr] >= 0) continue;
    depth[i.nbr] = depth[x] + 1;
    parent_edge[i.nbr] = i.index;
    order.push_back(i.nbr);
    stack.push_back(i.nbr);
  }
  // best[v]: back edge (index) from v's subtree reaching the smallest depth
  std::vector<int> best(n, -1), best_depth(n, n);
  for (int x = 0; x < n; ++x)
    for (const auto& i : g.incident(x)) {
      if (i.index == parent_edge[x] || g.edge_at(i.index).is_loop()) continue;
      if (depth[i.nbr] < depth[x] && depth[i.nbr] < best_depth[x]) {
        best_depth[x] = depth[i.nbr];
        best[x] = i.index;
      }
    }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    if (parent_edge[x] < 0) continue;
    int p = g.edge_at(parent_edge[x]).other(x);
    if (best_depth[x] < best_depth[p]) {
      best_depth[p] = best_depth[x];
      best[p] = best[x];
    }
  }
  EdgeSet out;
  for (int x = 0; x < n; ++x) {
    if (parent_edge[x] < 0) continue;
    out.push_back(g.edge_at(parent_edge[x]).id);
    if (best[x] >= 0) out.push_back(g.edge_at(best[x]).id);
  }
  return make_set(out);
}

// ---- verification ----

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ok:
      return "OK";
    case Verdict::invalid_edge:
      return "INVALID_EDGE";
    case Verdict::spanning_fail:
      return "SPANNING_FAIL";
    case Verdict::not_2ec:
      return "NOT_2EC";
  }
  return "OK";
}

Verification verify(const Graph& g, const EdgeSet& solution) {
  Verification r;
  for (EdgeId id : solution)
    if (!g.has_edge(id)) {
      r.verdict = Verdict::invalid_edge;
      r.witness_edge = id;
      return r;
    }
  Graph h = subgraph(g, solution);
  if (g.num_vertices() > 1)
    for (Vertex x = 0; x < g.num_vertices(); ++x)
      if (h.degree(x) == 0) {
        r.verdict = Verdict::spanning_fail;
        r.witness_vertex = x;
        return r;
      }
  if (!is_connected(h)) {
    r.verdict = Verdict::not_2ec;
    return r;
  }
  EdgeSet br = bridges(h);
  if (!br.empty()) {
    r.verdict = Verdict::not_2ec;
    r.witness_edge = br.front();
  }
  return r;
}

// ---- reports ----

namespace {

std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

nlohmann::json edges_json(const EdgeSet& s) { return nlohmann::json(s); }

}  // namespace

std::string trace_digest(const SolveResult& r) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const ReductionStep& st : r.reduction.steps) {
    std::ostringstream os;
    os << st.rule << '|' << st.depth << '|' << st.n << '|' << st.m << '|';
    for (EdgeId id : st.patch) os << id << ',';
    h = fnv(h, os.str());
  }
  for (const StructuredRun& run : r.dispatched)
    for (const GuessRun& gr : run.runs)
      for (const MoveRecord& m : gr.trace.moves) {
        std::ostringstream os;
        os << m.stage << '|' << m.rule << '|' << m.size_before << '|' << m.size_after << '|'
           << to_string(m.cost_before) << '|' << to_string(m.cost_after) << '|';
        for (EdgeId id : m.added) os << id << ',';
        os << '|';
        for (EdgeId id : m.removed) os << id << ',';
        h = fnv(h, os.str());
      }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json move_json(const MoveRecord& m) {
  nlohmann::json j;
  j["stage"] = m.stage;
  j["rule"] = m.rule;
  j["added"] = edges_json(m.added);
  j["removed"] = edges_json(m.removed);
  j["size"] = {m.size_before, m.size_after};
  j["components"] = {m.components_before, m.components_after};
  j["bridges"] = {m.bridges_before, m.bridges_after};
  j["cost"] = {to_string(m.cost_before), to_string(m.cost_after)};
  j["coarsening"] = m.coarsening;
  j["canonical_after"] = m.canonical_after;
  if (!m.canonical_detail.empty()) j["canonical_detail"] = m.canonical_detail;
  j["flagged"] = m.flagged;
  if (!m.note.empty()) j["note"] = m.note;
  return j;
}

nlohmann::json monitors_json(const Monitors& m) {
  nlohmann::json j;
  j["matching_checks"] = m.matching_checks;
  j["matching_failures"] = m.matching_failures;
  j["ham_pair_checks"] = m.ham_pair_checks;
  j["ham_pair_failures"] = m.ham_pair_failures;
  j["shortcut_checks"] = m.shortcut_checks;
  j["shortcut_failures"] = m.shortcut_failures;
  j["impossible_branches"] = m.impossible_branches;
  j["reachable_checks"] = m.reachable_checks;
  j["reachable_failures"] = m.reachable_failures;
  j["fallback_moves"] = m.fallback_moves;
  j["cheap_rejections"] = m.cheap_rejections;
  j["canonical_stalls"] = m.canonical_stalls;
  j["counterexamples"] = m.counterexamples.size();
  return j;
}

nlohmann::json solve_report(const Instance& inst, const SolveResult& r, const SolveOptions& opt, std::uint64_t seed,
                            const std::optional<int>& opt_value, const ReportOptions& ro) {
  nlohmann::json j;
  j["instance"] = {{"name", inst.name},
                   {"hash", instance_hash(inst.graph)},
                   {"n", inst.graph.num_vertices()},
                   {"m", inst.graph.num_edges()}};
  j["algorithm"] = "tecss";
  j["seed"] = seed;
  j["alpha"] = to_string(opt.alpha);
  j["solution"] = edges_json(r.edges);
  j["size"] = r.edges.size();
  j["feasible"] = verify(inst.graph, r.edges).verdict == Verdict::ok;
  if (opt_value) {
    j["opt"] = *opt_value;
    j["ratio"] = to_string(Rational(static_cast<long long>(r.edges.size()), *opt_value));
  }
  j["certified"] = r.certified;
  nlohmann::json disp = nlohmann::json::array();
  for (const StructuredRun& run : r.dispatched) {
    nlohmann::json d;
    d["n"] = run.n;
    d["m"] = run.m;
    d["size"] = run.edges.size();
    d["guesses_tried"] = run.guesses_tried;
    d["certified"] = run.certified;
    d["stop_reason"] = run.stop_reason;
    if (run.structured) {
      d["structured"] = *run.structured;
      if (!run.structured_reason.empty()) d["structured_reason"] = run.structured_reason;
    }
    d["unconstrained_cover"] = run.unconstrained_cover;
    const GuessRun& best = run.runs[run.best_guess];
    d["cover_size"] = best.cover_size;
    d["canonical_cost"] = to_string(best.canonical_cost);
    d["final_cost"] = to_string(best.final_cost);
    d["bound"] = to_string(Rational(5, 4) * Rational(best.cover_size) - Rational(2));
    if (ro.include_trace) {
      nlohmann::json moves = nlohmann::json::array();
      for (const MoveRecord& m : best.trace.moves) moves.push_back(move_json(m));
      d["moves"] = moves;
    }
    disp.push_back(d);
  }
  j["dispatched"] = disp;
  nlohmann::json steps = nlohmann::json::array();
  for (const ReductionStep& st : r.reduction.steps) {
    nlohmann::json s{{"rule", st.rule}, {"depth", st.depth}, {"n", st.n}, {"m", st.m}};
    if (ro.include_trace) {
      s["patch"] = edges_json(st.patch);
      if (!st.note.empty()) s["note"] = st.note;
    }
    steps.push_back(s);
  }
  j["reduction"] = steps;
  j["monitors"] = monitors_json(r.monitors);
  j["trace_digest"] = trace_digest(r);
  if (ro.include_timing) j["wall_seconds"] = ro.wall_seconds;
  return j;
}

}  // namespace tecss
