#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "localmax/graph.hpp"
#include "localmax/matching.hpp"
#include "localmax/tie_key.hpp"

namespace testutil {

using namespace localmax;

inline Graph make(VertexId n, std::vector<InputEdge> edges) { return build_graph(n, edges); }

inline Graph triangle_123() { return make(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}}); }
inline Graph path_232() { return make(4, {{0, 1, 2.0}, {1, 2, 3.0}, {2, 3, 2.0}}); }

inline EdgeId find_edge(const Graph& g, VertexId a, VertexId b) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& r = g.edge(e);
    if ((r.u == a && r.v == b) || (r.u == b && r.v == a)) return e;
  }
  return kNoEdge;
}

// Small random multigraph input (self-loops and duplicates included) with
// a weight regime picked from the seed.
inline std::pair<VertexId, std::vector<InputEdge>> random_input(std::uint64_t seed, VertexId max_n = 40,
                                                                std::size_t max_m = 120) {
  std::mt19937_64 rng(seed * 7919 + 17);
  const VertexId n = 1 + static_cast<VertexId>(rng() % max_n);
  const std::size_t m = rng() % (max_m + 1);
  const int regime = static_cast<int>(seed % 3);
  std::vector<InputEdge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    const auto u = static_cast<VertexId>(rng() % n);
    const auto v = static_cast<VertexId>(rng() % n);
    double w = 1.0;
    if (regime == 1) w = static_cast<double>(rng() % 4);
    if (regime == 2) w = static_cast<double>(rng() % 1000) / 997.0;
    edges.push_back({u, v, w});
  }
  return {n, edges};
}

inline Graph random_graph(std::uint64_t seed, VertexId max_n = 40, std::size_t max_m = 120) {
  auto [n, edges] = random_input(seed, max_n, max_m);
  return build_graph(n, edges);
}

// Maximality and validity checked directly from the edge list.
inline bool naive_valid(const Graph& g, const std::vector<EdgeId>& m) {
  std::set<VertexId> used;
  for (EdgeId e : m) {
    if (e >= g.num_edges()) return false;
    if (!used.insert(g.edge(e).u).second || !used.insert(g.edge(e).v).second) return false;
  }
  return true;
}

inline bool naive_maximal(const Graph& g, const std::vector<EdgeId>& m) {
  std::set<VertexId> used;
  for (EdgeId e : m) {
    used.insert(g.edge(e).u);
    used.insert(g.edge(e).v);
  }
  for (const auto& r : g.edges()) {
    if (!used.count(r.u) && !used.count(r.v)) return false;
  }
  return true;
}

// Exhaustive maximum-weight matching over all edge subsets (m <= 20).
inline double exhaustive_opt(const Graph& g) {
  const EdgeId m = g.num_edges();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<char> used(g.num_vertices(), 0);
    double w = 0.0;
    bool ok = true;
    for (EdgeId e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1u)) continue;
      const auto& r = g.edge(e);
      if (used[r.u] || used[r.v]) ok = false;
      used[r.u] = used[r.v] = 1;
      w += r.w;
    }
    if (ok) best = std::max(best, w);
  }
  return best;
}

// Local max simulated directly on edge sets: every round, an edge is matched
// when no live edge sharing an endpoint has a larger key.
inline std::vector<std::vector<EdgeId>> naive_local_max_rounds(const Graph& g, std::uint64_t seed, bool rerandomize) {
  std::vector<char> alive(g.num_edges(), 1);
  std::vector<std::vector<EdgeId>> rounds;
  for (std::uint32_t round = 1;; ++round) {
    std::vector<EdgeId> live;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (alive[e]) live.push_back(e);
    }
    if (live.empty()) break;
    const auto rs = round_seed(seed, round, rerandomize);
    std::vector<EdgeId> matched;
    for (EdgeId e : live) {
      const auto ke = tie_key(e, g.edge(e).w, rs);
      bool best = true;
      for (EdgeId f : live) {
        if (f == e) continue;
        const auto& a = g.edge(e);
        const auto& b = g.edge(f);
        if (a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v) continue;
        if (tie_key(f, b.w, rs) > ke) best = false;
      }
      if (best) matched.push_back(e);
    }
    std::set<VertexId> hit;
    for (EdgeId e : matched) {
      hit.insert(g.edge(e).u);
      hit.insert(g.edge(e).v);
    }
    for (EdgeId e : live) {
      if (hit.count(g.edge(e).u) || hit.count(g.edge(e).v)) alive[e] = 0;
    }
    rounds.push_back(matched);
  }
  return rounds;
}

}  // namespace testutil
