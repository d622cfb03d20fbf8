#pragma once
// Brute-force reference implementations for tests. These avoid the library's
// connectivity routines on purpose.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tecss/graph.hpp"

namespace oracle {

using tecss::Edge;
using tecss::EdgeId;
using tecss::EdgeSet;
using tecss::Graph;
using tecss::Vertex;

inline int count_components(int n, const std::vector<std::pair<int, int>>& es) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  auto find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  int c = n;
  for (auto [a, b] : es) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      p[ra] = rb;
      --c;
    }
  }
  return c;
}

inline std::vector<std::pair<int, int>> pairs_of(const Graph& g, const EdgeSet& s) {
  std::vector<std::pair<int, int>> es;
  for (EdgeId id : s) es.push_back({g.edge(id).u, g.edge(id).v});
  return es;
}

// connected + removing any single edge keeps it connected
inline bool is_2ec(const Graph& g, const EdgeSet& s) {
  int n = g.num_vertices();
  auto es = pairs_of(g, s);
  if (count_components(n, es) != 1) return false;
  for (size_t i = 0; i < es.size(); ++i) {
    auto rest = es;
    rest.erase(rest.begin() + i);
    if (count_components(n, rest) != 1) return false;
  }
  return true;
}

inline bool is_2ec(const Graph& g) { return is_2ec(g, g.edge_ids()); }

inline EdgeSet subset_from_mask(const Graph& g, std::uint64_t mask) {
  EdgeSet s;
  for (int i = 0; i < g.num_edges(); ++i)
    if (mask >> i & 1) s.push_back(g.edge_at(i).id);
  return s;
}

// Smallest size, then lexicographically smallest id set.
template <typename Pred>
std::optional<EdgeSet> min_subset(const Graph& g, Pred ok) {
  int m = g.num_edges();
  std::optional<EdgeSet> best;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    int sz = __builtin_popcountll(mask);
    if (best && sz > static_cast<int>(best->size())) continue;
    EdgeSet s = subset_from_mask(g, mask);
    if (!ok(s)) continue;
    if (!best || s.size() < best->size() || (s.size() == best->size() && s < *best)) best = s;
  }
  return best;
}

template <typename Pred>
std::optional<EdgeSet> max_subset(const Graph& g, Pred ok) {
  int m = g.num_edges();
  std::optional<EdgeSet> best;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    EdgeSet s = subset_from_mask(g, mask);
    if (best && s.size() <= best->size()) continue;
    if (ok(s)) best = s;
  }
  return best;
}

inline std::vector<int> degrees(const Graph& g, const EdgeSet& s) {
  std::vector<int> d(g.num_vertices(), 0);
  for (EdgeId id : s) {
    ++d[g.edge(id).u];
    ++d[g.edge(id).v];
  }
  return d;
}

// No component of s (on the touched vertices) is a triangle.
inline bool triangle_free(const Graph& g, const EdgeSet& s) {
  int n = g.num_vertices();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        int inside = 0, touching = 0;
        for (EdgeId id : s) {
          const Edge& e = g.edge(id);
          bool iu = e.u == a || e.u == b || e.u == c;
          bool iv = e.v == a || e.v == b || e.v == c;
          if (iu && iv) ++inside;
          else if (iu || iv) ++touching;
        }
        if (inside == 3 && touching == 0) {
          std::vector<std::pair<int, int>> ps;
          for (EdgeId id : s) {
            const Edge& e = g.edge(id);
            if (e.u == a || e.u == b || e.u == c) ps.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
          }
          std::sort(ps.begin(), ps.end());
          if (std::adjacent_find(ps.begin(), ps.end()) == ps.end()) return false;
        }
      }
  return true;
}

inline bool is_2edge_cover(const Graph& g, const EdgeSet& s) {
  for (int d : degrees(g, s))
    if (d < 2) return false;
  return true;
}

inline std::optional<EdgeSet> min_2ecss(const Graph& g) {
  return min_subset(g, [&](const EdgeSet& s) { return is_2ec(g, s); });
}

inline std::optional<EdgeSet> min_tf2ec(const Graph& g, const EdgeSet& forced) {
  return min_subset(g, [&](const EdgeSet& s) {
    return std::includes(s.begin(), s.end(), forced.begin(), forced.end()) && is_2edge_cover(g, s) &&
           triangle_free(g, s);
  });
}

inline EdgeSet max_tf2matching(const Graph& g) {
  return *max_subset(g, [&](const EdgeSet& s) {
    for (int d : degrees(g, s))
      if (d > 2) return false;
    return triangle_free(g, s);
  });
}

// ---- random instances ----

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
  bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(eng) < p; }
};

// Random simple graph on n vertices with a Hamiltonian cycle plus extra chords.
inline Graph random_hamiltonian(Rng& r, int n, int chords) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), r.eng);
  std::vector<std::pair<int, int>> es;
  auto has = [&](int a, int b) {
    for (auto [x, y] : es)
      if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
  };
  for (int i = 0; i < n; ++i) es.push_back({perm[i], perm[(i + 1) % n]});
  int tries = 0;
  while (chords > 0 && tries++ < 1000) {
    int a = r.uniform(0, n - 1), b = r.uniform(0, n - 1);
    if (a == b || has(a, b)) continue;
    es.push_back({a, b});
    --chords;
  }
  for (auto& [a, b] : es)
    if (a > b) std::swap(a, b);
  std::sort(es.begin(), es.end());
  Graph g(n);
  for (auto [a, b] : es) g.add_edge(a, b);
  return g;
}

inline Graph random_gnp(Rng& r, int n, double p) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (r.coin(p)) g.add_edge(a, b);
  return g;
}

inline Graph from_edges(int n, const std::vector<std::pair<int, int>>& es) {
  Graph g(n);
  for (auto [a, b] : es) g.add_edge(a, b);
  return g;
}

inline Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph complete(int n) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

}  // namespace oracle
