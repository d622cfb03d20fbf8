#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "tecss/bridge_cover.hpp"
#include "tecss/harness.hpp"

using namespace tecss;

namespace {

struct Built {
  Graph g;
  EdgeSet s;  // cover edges
};

// Cover edges are added first, then edges of g outside the cover.
Built build(int n, const std::vector<std::pair<int, int>>& cover, const std::vector<std::pair<int, int>>& extra) {
  Built b{Graph(n), {}};
  for (auto [u, v] : cover) b.s.push_back(b.g.add_edge(u, v));
  for (auto [u, v] : extra) b.g.add_edge(u, v);
  b.s = make_set(b.s);
  return b;
}

void add_cycle(std::vector<std::pair<int, int>>& es, int first, int len) {
  for (int i = 0; i < len; ++i) es.push_back({first + i, first + (i + 1) % len});
}

EdgeId edge_between(const Graph& g, int u, int v) {
  for (const Edge& e : g.edges())
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return e.id;
  return -1;
}

// Bridges of the component by deletion.
EdgeSet oracle_bridges(const Graph& g, const EdgeSet& s) {
  int n = g.num_vertices();
  int base = oracle::count_components(n, oracle::pairs_of(g, s));
  EdgeSet out;
  for (EdgeId id : s)
    if (oracle::count_components(n, oracle::pairs_of(g, set_difference(s, {id}))) > base) out.push_back(id);
  return out;
}

// Cycles of 4 to 7 vertices joined into a tree by bridge paths of one to
// three edges, plus a separate 8-cycle and random non-cover edges.
Built random_complex_cover(oracle::Rng& rng) {
  std::vector<std::pair<int, int>> cov, extra;
  std::vector<std::vector<int>> blocks;
  int n = 0;
  int count = rng.uniform(2, 4);
  for (int i = 0; i < count; ++i) {
    int len = rng.uniform(4, 7);
    add_cycle(cov, n, len);
    std::vector<int> vs;
    for (int j = 0; j < len; ++j) vs.push_back(n + j);
    blocks.push_back(vs);
    n += len;
    if (i == 0) continue;
    int from = blocks[rng.uniform(0, i - 1)][rng.uniform(0, 3)];
    int to = blocks[i][rng.uniform(0, len - 1)];
    int inner = rng.uniform(0, 2);
    int prev = from;
    for (int j = 0; j < inner; ++j) {
      cov.push_back({prev, 1000 + j});  // renumbered below
      prev = 1000 + j;
    }
    cov.push_back({prev, to});
    for (auto& [a, b] : cov) {
      if (a >= 1000) a = n + a - 1000;
      if (b >= 1000) b = n + b - 1000;
    }
    n += inner;
  }
  add_cycle(cov, n, 8);
  n += 8;
  int chords = rng.uniform(2, 8);
  std::set<std::pair<int, int>> have;
  for (auto [a, b] : cov) have.insert({std::min(a, b), std::max(a, b)});
  while (chords > 0) {
    int a = rng.uniform(0, n - 1), c = rng.uniform(0, n - 1);
    if (a == c || !have.insert({std::min(a, c), std::max(a, c)}).second) continue;
    extra.push_back({a, c});
    --chords;
  }
  return build(n, cov, extra);
}

// Pipeline inputs on graphs that pass the structuredness test.
std::vector<Graph> structured_hosts(int want) {
  std::vector<Graph> out;
  for (std::uint64_t seed = 1; static_cast<int>(out.size()) < want && seed < 200; ++seed) {
    Graph g = generate({"structured_stress", 30, 0.2, seed});
    if (is_structured(g, Rational(5, 4)).structured) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("bridge tree of two blocks and one bridge") {
  std::vector<std::pair<int, int>> cov;
  add_cycle(cov, 0, 4);
  add_cycle(cov, 4, 4);
  cov.push_back({0, 4});
  Built b = build(8, cov, {});
  TcTree tc = build_tc(b.g, b.s, 0);
  CHECK(tc.tc_size == 2);
  CHECK(tc.is_block == std::vector<char>{1, 1});
  CHECK(tc.tc_edges == EdgeSet{edge_between(b.g, 0, 4)});
  CHECK(tc.tree_adj[0].size() == 1);
  CHECK(reachable(tc, {0}).empty());
}

TEST_CASE("bridge tree of block, lonely vertex, block") {
  std::vector<std::pair<int, int>> cov;
  add_cycle(cov, 0, 4);
  add_cycle(cov, 5, 4);
  cov.push_back({0, 4});
  cov.push_back({4, 5});
  Built b = build(9, cov, {});
  TcTree tc = build_tc(b.g, b.s, 0);
  REQUIRE(tc.tc_size == 3);
  CHECK(tc.is_block[tc.node_of[4]] == 0);
  CHECK(tc.is_block[tc.node_of[0]] == 1);
  CHECK(tc.is_block[tc.node_of[5]] == 1);
  CHECK(tc.tree_adj[tc.node_of[4]].size() == 2);
  CHECK(tree_path_counts(tc, tc.node_of[0], tc.node_of[5]) == std::pair{2, 2});
}

TEST_CASE("build_tc rejects a bridgeless component") {
  Graph c5 = oracle::cycle(5);
  CHECK_THROWS_AS(build_tc(c5, c5.edge_ids(), 0), std::invalid_argument);
}

TEST_CASE("a parallel cross edge makes two blocks mutually reachable") {
  std::vector<std::pair<int, int>> cov;
  add_cycle(cov, 0, 4);
  add_cycle(cov, 4, 4);
  cov.push_back({0, 4});
  Built b = build(8, cov, {{2, 6}});
  TcTree tc = build_tc(b.g, b.s, 0);
  CHECK(reachable(tc, {0}) == std::vector<int>{1});
  CHECK(reachable(tc, {1}) == std::vector<int>{0});
  CHECK(covering_path(tc, {0}, 1) == EdgeSet{edge_between(b.g, 2, 6)});
}

TEST_CASE("cheapness arithmetic") {
  CHECK(is_cheap(1, 2));  // two blocks
  CHECK(is_cheap(4, 1));  // one block, four bridges
  CHECK_FALSE(is_cheap(2, 1));
  CHECK_FALSE(is_cheap(3, 1));
  CHECK_FALSE(is_cheap(7, 0));
  CHECK(is_cheap(8, 0));
}

TEST_CASE("cheap parallel edge in a dumbbell") {
  std::vector<std::pair<int, int>> cov;
  add_cycle(cov, 0, 6);
  add_cycle(cov, 6, 6);
  cov.push_back({0, 6});
  Built b = build(12, cov, {{3, 9}});
  REQUIRE(check_canonical(b.g, b.s).ok);
  BridgeCoverMove m = cover_step(b.g, b.s, 0);
  CHECK(m.rule == "cheap_path");
  CHECK(m.added == EdgeSet{edge_between(b.g, 3, 9)});
  CHECK(m.removed.empty());
  // 13 + 1 + 2 + 1/4 before, 14 + 2 after
  CHECK(m.cost_delta == Rational(1, 4));
  CHECK_FALSE(m.fallback);
}

TEST_CASE("two expensive paths sharing a tree node are merged") {
  // Tree: b'' - u4 - u3 - u2 - u1 - b with a leaf block b' on u2. Cross
  // edges b-u2, b-u3, b'-u1 and b''-u3 are all expensive.
  std::vector<std::pair<int, int>> cov;
  add_cycle(cov, 0, 6);    // b''
  add_cycle(cov, 10, 6);   // b
  add_cycle(cov, 16, 6);   // b'
  const int u4 = 6, u3 = 7, u2 = 8, u1 = 9;
  cov.insert(cov.end(), {{3, u4}, {u4, u3}, {u3, u2}, {u2, u1}, {u1, 10}, {19, u2}});
  Built b = build(22, cov, {{11, u2}, {12, u3}, {16, u1}, {0, u3}});
  REQUIRE(is_2ec(b.g));
  REQUIRE(check_canonical(b.g, b.s).ok);
  TcTree tc = build_tc(b.g, b.s, 0);
  CHECK(cheap_paths(b.g, b.s, tc).empty());
  Monitors mon;
  BridgeCoverMove m = cover_step(b.g, b.s, 0, &mon);
  CHECK(m.rule == "merge_two_paths");
  CHECK(m.added == make_set({edge_between(b.g, 12, u3), edge_between(b.g, 16, u1)}));
  CHECK(m.cost_delta == Rational(0));
  CHECK(mon.clean());
  EdgeSet next = set_union(b.s, m.added);
  CHECK(analyze_cover(b.g, next).num_bridges == analyze_cover(b.g, b.s).num_bridges - 4);
}

TEST_CASE("two paths with one bridge dropped") {
  // Tree: b'' - u5 - u4 - u3 - u2 - u1 - b, cross edges b-u2, b-u3, u1-u5
  // and b''-u4; nothing hangs off the path.
  std::vector<std::pair<int, int>> cov;
  add_cycle(cov, 0, 6);   // b''
  add_cycle(cov, 11, 6);  // b
  const int u5 = 6, u4 = 7, u3 = 8, u2 = 9, u1 = 10;
  cov.insert(cov.end(), {{3, u5}, {u5, u4}, {u4, u3}, {u3, u2}, {u2, u1}, {u1, 11}});
  Built b = build(17, cov, {{12, u2}, {13, u3}, {u1, u5}, {0, u4}});
  REQUIRE(is_2ec(b.g));
  REQUIRE(check_canonical(b.g, b.s).ok);
  TcTree tc = build_tc(b.g, b.s, 0);
  CHECK(cheap_paths(b.g, b.s, tc).empty());
  Monitors mon;
  BridgeCoverMove m = cover_step(b.g, b.s, 0, &mon);
  CHECK(m.rule == "two_paths_drop_bridge");
  CHECK(m.removed == EdgeSet{edge_between(b.g, u2, u1)});
  CHECK(m.added == make_set({edge_between(b.g, 12, u2), edge_between(b.g, u1, u5)}));
  EdgeSet next = set_union(set_difference(b.s, m.removed), m.added);
  CHECK(next.size() == b.s.size() + 1);
  CHECK(m.cost_delta == Rational(1, 4));
  CHECK(analyze_cover(b.g, next).num_bridges == 1);
  CHECK(mon.clean());
}

TEST_CASE("bridge trees agree with deletion, leaves are blocks, reachability is symmetric") {
  oracle::Rng rng(5);
  int trees = 0;
  for (int iter = 0; iter < 150; ++iter) {
    Built b = random_complex_cover(rng);
    const Graph& g = b.g;
    CoverStructure st = analyze_cover(g, b.s);
    for (int c = 0; c < static_cast<int>(st.components.size()); ++c) {
      if (st.components[c].bridges.empty()) continue;
      ++trees;
      TcTree tc = build_tc(g, b.s, c);
      CHECK(tc.tc_edges == oracle_bridges(g, st.components[c].edges));
      CHECK(static_cast<int>(tc.tc_edges.size()) == tc.tc_size - 1);
      for (int x = 0; x < tc.tc_size; ++x) {
        // a 2-edge cover forces every leaf of the bridge tree to be a block
        if (tc.tree_adj[x].size() == 1) CHECK(tc.is_block[x] == 1);
        for (int y : reachable(tc, {x})) {
          std::vector<int> back = reachable(tc, {y});
          CHECK(std::find(back.begin(), back.end(), x) != back.end());
        }
      }
    }
  }
  CHECK(trees == 150);
}

TEST_CASE("cover_all removes every bridge without raising the cost") {
  std::vector<Graph> hosts = structured_hosts(3);
  REQUIRE(hosts.size() == 3);
  int runs = 0, moves = 0;
  for (const Graph& g : hosts) {
    int k = 0;
    enumerate_guesses(g, [&](const EdgeSet& f) {
      if (k++ >= 25) return false;
      SolveTrace tr;
      CanonicalCover c = canonicalize(g, initial_cover(g, f), &tr);
      tr.moves.clear();
      CanonicalCover out = cover_all(g, c, &tr);
      ++runs;
      CHECK(analyze_cover(g, out.edges).num_bridges == 0);
      CHECK(cost(g, out.edges) <= cost(g, c.edges));
      CHECK(check_canonical(g, out.edges).ok);
      CHECK(is_coarsening(g, c.edges, out.edges));
      CHECK(tr.monitors.clean());
      for (const MoveRecord& m : tr.moves) {
        ++moves;
        CHECK(m.bridges_after < m.bridges_before);
        CHECK(m.cost_after <= m.cost_before);
        CHECK(m.canonical_after);
        CHECK(m.coarsening);
      }
      return true;
    });
  }
  CHECK(runs == 75);
  CHECK(moves > 0);
}

TEST_CASE("cover_all leaves a bridgeless cover unchanged") {
  Graph g = oracle::cycle(9);
  CanonicalCover c = make_canonical_cover(g, g.edge_ids());
  SolveTrace tr;
  CHECK(cover_all(g, c, &tr).edges == c.edges);
  CHECK(tr.moves.empty());
}
