#include "localmax/matchers.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

namespace localmax {
namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<TieKey> all_keys(const Graph& g, std::uint64_t rseed) {
  std::vector<TieKey> keys(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) keys[e] = tie_key(e, g.edge(e).w, rseed);
  return keys;
}

std::vector<EdgeId> edges_by_decreasing_key(const std::vector<TieKey>& keys) {
  std::vector<EdgeId> order(keys.size());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return keys[b] < keys[a]; });
  return order;
}

PhaseTrace single_round(const Graph& g, const Matching& m, Clock::time_point start) {
  PhaseTrace trace;
  if (!g.empty()) trace.rounds.push_back({g.num_edges(), m.size(), g.num_edges()});
  trace.wall_millis = millis_since(start);
  return trace;
}

}  // namespace

double PhaseTrace::mean_removed_fraction() const {
  if (rounds.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : rounds) sum += r.removed_fraction();
  return sum / static_cast<double>(rounds.size());
}

std::size_t PhaseTrace::total_removed() const {
  std::size_t total = 0;
  for (const auto& r : rounds) total += r.edges_removed;
  return total;
}

std::size_t PhaseTrace::total_messages() const {
  std::size_t total = 0;
  for (const auto& r : rounds) total += r.candidate_messages + r.status_messages;
  return total;
}

std::size_t PhaseTrace::total_message_bytes() const {
  std::size_t total = 0;
  for (const auto& r : rounds) total += r.message_bytes;
  return total;
}

MatchResult local_max_seq(const Graph& g, const LocalMaxOptions& opts) {
  const auto start = Clock::now();
  MatchResult result{Matching(g.num_vertices()), {}};
  Matching& m = result.matching;

  std::vector<EdgeId> live(g.num_edges());
  std::iota(live.begin(), live.end(), EdgeId{0});
  std::vector<TieKey> keys(g.num_edges());
  CandidateTable cand(g.num_vertices());

  for (std::uint32_t round = 1; !live.empty(); ++round) {
    const std::uint64_t rseed = round_seed(opts.seed, round, opts.rerandomize);
    RoundStats stats;
    stats.edges_before = live.size();

    // pass 1: heaviest surviving edge per endpoint
    for (EdgeId e : live) {
      const auto& rec = g.edge(e);
      keys[e] = tie_key(e, rec.w, rseed);
      cand.offer(rec.u, e, keys);
      cand.offer(rec.v, e, keys);
    }
    // pass 2: locally maximal edges join the matching
    for (EdgeId e : live) {
      const auto& rec = g.edge(e);
      if (cand[rec.u] == e && cand[rec.v] == e) {
        m.add(g, e);
        ++stats.edges_matched;
      }
    }
    // pass 3: drop edges at matched vertices, reset candidates of the rest
    std::size_t kept = 0;
    for (EdgeId e : live) {
      const auto& rec = g.edge(e);
      if (m.is_matched(rec.u) || m.is_matched(rec.v)) continue;
      cand.reset(rec.u);
      cand.reset(rec.v);
      live[kept++] = e;
    }
    stats.edges_removed = live.size() - kept;
    live.resize(kept);
    result.trace.rounds.push_back(stats);
  }
  m.normalize();
  result.trace.wall_millis = millis_since(start);
  return result;
}

MatchResult greedy(const Graph& g, std::uint64_t seed) {
  const auto start = Clock::now();
  Matching m(g.num_vertices());
  const auto keys = all_keys(g, round_seed(seed, 0, false));
  for (EdgeId e : edges_by_decreasing_key(keys)) {
    const auto& rec = g.edge(e);
    if (!m.is_matched(rec.u) && !m.is_matched(rec.v)) m.add(g, e);
  }
  m.normalize();
  auto trace = single_round(g, m, start);
  return {std::move(m), std::move(trace)};
}

std::vector<std::size_t> path_dp(const std::vector<double>& w) {
  const std::size_t k = w.size();
  // best[i] = optimum over the first i edges
  std::vector<double> best(k + 1, 0.0);
  for (std::size_t i = 1; i <= k; ++i) {
    const double take = (i >= 2 ? best[i - 2] : 0.0) + w[i - 1];
    best[i] = std::max(best[i - 1], take);
  }
  std::vector<std::size_t> chosen;
  for (std::size_t i = k; i >= 1;) {
    const double take = (i >= 2 ? best[i - 2] : 0.0) + w[i - 1];
    if (take > best[i - 1]) {
      chosen.push_back(i - 1);
      i = i >= 2 ? i - 2 : 0;
    } else {
      --i;
    }
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

class PathUnionFind {
 public:
  explicit PathUnionFind(VertexId n) : parent_(n), edges_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
  }
  VertexId find(VertexId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  std::size_t edge_count(VertexId root) const { return edges_[root]; }
  void add_edge(VertexId ru, VertexId rv) {
    if (ru == rv) {
      ++edges_[ru];
      return;
    }
    parent_[rv] = ru;
    edges_[ru] += edges_[rv] + 1;
  }

 private:
  std::vector<VertexId> parent_;
  std::vector<std::size_t> edges_;
};

}  // namespace

MatchResult gpa(const Graph& g, std::uint64_t seed) {
  const auto start = Clock::now();
  const VertexId n = g.num_vertices();
  const auto keys = all_keys(g, round_seed(seed, 0, false));
  const auto order = edges_by_decreasing_key(keys);

  // G2: at most two incident edges per vertex, no odd cycles
  std::vector<std::array<EdgeId, 2>> g2(n, {kNoEdge, kNoEdge});
  std::vector<std::uint8_t> deg(n, 0);
  PathUnionFind uf(n);
  for (EdgeId e : order) {
    const auto& rec = g.edge(e);
    if (deg[rec.u] >= 2 || deg[rec.v] >= 2) continue;
    const VertexId ru = uf.find(rec.u);
    const VertexId rv = uf.find(rec.v);
    // u and v are the two ends of one path: closing it gives a cycle of
    // edge_count + 1 edges, which must be even
    if (ru == rv && uf.edge_count(ru) % 2 == 0) continue;
    uf.add_edge(ru, rv);
    g2[rec.u][deg[rec.u]++] = e;
    g2[rec.v][deg[rec.v]++] = e;
  }

  Matching m(n);
  std::vector<std::uint8_t> visited(n, 0);
  auto walk = [&](VertexId from, EdgeId first) {
    std::vector<EdgeId> seq;
    VertexId cur = from;
    EdgeId next = first;
    visited[cur] = 1;
    while (next != kNoEdge) {
      seq.push_back(next);
      cur = g.edge(next).other(cur);
      if (visited[cur]) break;
      visited[cur] = 1;
      const EdgeId prev = next;
      next = g2[cur][0] == prev ? g2[cur][1] : g2[cur][0];
    }
    return seq;
  };
  auto weights_of = [&](const std::vector<EdgeId>& seq) {
    std::vector<double> w;
    w.reserve(seq.size());
    for (EdgeId e : seq) w.push_back(g.edge(e).w);
    return w;
  };
  auto take = [&](const std::vector<EdgeId>& seq, const std::vector<std::size_t>& pos) {
    for (std::size_t i : pos) m.add(g, seq[i]);
  };
  auto weight_at = [&](const std::vector<EdgeId>& seq, const std::vector<std::size_t>& pos) {
    double s = 0.0;
    for (std::size_t i : pos) s += g.edge(seq[i]).w;
    return s;
  };

  for (VertexId v = 0; v < n; ++v) {
    if (deg[v] != 1 || visited[v]) continue;
    const auto path = walk(v, g2[v][0]);
    take(path, path_dp(weights_of(path)));
  }
  for (VertexId v = 0; v < n; ++v) {
    if (deg[v] != 2 || visited[v]) continue;
    const auto cycle = walk(v, g2[v][0]);
    // any matching of the cycle misses one of two adjacent edges
    std::vector<EdgeId> without_first(cycle.begin() + 1, cycle.end());
    std::vector<EdgeId> without_second(cycle.begin() + 2, cycle.end());
    without_second.push_back(cycle.front());
    const auto a = path_dp(weights_of(without_first));
    const auto b = path_dp(weights_of(without_second));
    if (weight_at(without_second, b) > weight_at(without_first, a)) {
      take(without_second, b);
    } else {
      take(without_first, a);
    }
  }

  // fill-in sweep for maximality
  for (EdgeId e : order) {
    const auto& rec = g.edge(e);
    if (!m.is_matched(rec.u) && !m.is_matched(rec.v)) m.add(g, e);
  }
  m.normalize();
  auto trace = single_round(g, m, start);
  return {std::move(m), std::move(trace)};
}

MatchResult hem(const Graph& g, std::uint64_t seed, bool randomize_order) {
  const auto start = Clock::now();
  const VertexId n = g.num_vertices();
  const auto keys = all_keys(g, round_seed(seed, 0, false));
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  if (randomize_order) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  Matching m(n);
  for (VertexId v : order) {
    if (m.is_matched(v)) continue;
    EdgeId best = kNoEdge;
    for (const Slot& s : g.incident(v)) {
      if (m.is_matched(g.edge(s.edge).other(v))) continue;
      if (best == kNoEdge || keys[best] < keys[s.edge]) best = s.edge;
    }
    if (best != kNoEdge) m.add(g, best);
  }
  m.normalize();
  auto trace = single_round(g, m, start);
  return {std::move(m), std::move(trace)};
}

bool rbm_is_blue(std::uint64_t seed, std::uint32_t round, VertexId v) {
  return (mix64(round_seed(seed ^ 0x243f6a8885a308d3ULL, round, true) ^ mix64(v)) >> 63) != 0;
}

MatchResult rbm(const Graph& g, std::uint64_t seed) {
  const auto start = Clock::now();
  MatchResult result{Matching(g.num_vertices()), {}};
  Matching& m = result.matching;
  const auto keys = all_keys(g, round_seed(seed, 0, false));

  std::vector<EdgeId> live(g.num_edges());
  std::iota(live.begin(), live.end(), EdgeId{0});
  CandidateTable proposal(g.num_vertices());  // blue vertex -> chosen edge
  CandidateTable accepted(g.num_vertices());  // red vertex -> best incoming proposal

  for (std::uint32_t round = 1; !live.empty(); ++round) {
    RoundStats stats;
    stats.edges_before = live.size();
    auto blue = [&](VertexId v) { return rbm_is_blue(seed, round, v); };

    for (EdgeId e : live) {
      const auto& rec = g.edge(e);
      const bool bu = blue(rec.u);
      if (bu == blue(rec.v)) continue;
      proposal.offer(bu ? rec.u : rec.v, e, keys);
    }
    for (EdgeId e : live) {
      const auto& rec = g.edge(e);
      const bool bu = blue(rec.u);
      if (bu == blue(rec.v)) continue;
      const VertexId b = bu ? rec.u : rec.v;
      if (proposal[b] == e) accepted.offer(rec.other(b), e, keys);
    }
    for (EdgeId e : live) {
      const auto& rec = g.edge(e);
      const bool bu = blue(rec.u);
      if (bu == blue(rec.v)) continue;
      const VertexId r = bu ? rec.v : rec.u;
      if (accepted[r] == e) {
        m.add(g, e);
        ++stats.edges_matched;
      }
    }
    std::size_t kept = 0;
    for (EdgeId e : live) {
      const auto& rec = g.edge(e);
      if (m.is_matched(rec.u) || m.is_matched(rec.v)) continue;
      for (VertexId x : {rec.u, rec.v}) {
        proposal.reset(x);
        accepted.reset(x);
      }
      live[kept++] = e;
    }
    stats.edges_removed = live.size() - kept;
    live.resize(kept);
    result.trace.rounds.push_back(stats);
  }
  m.normalize();
  result.trace.wall_millis = millis_since(start);
  return result;
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "localmax" || name == "local_max") return Algorithm::local_max;
  if (name == "greedy") return Algorithm::greedy;
  if (name == "gpa") return Algorithm::gpa;
  if (name == "hem") return Algorithm::hem;
  if (name == "hem-random" || name == "hem_random") return Algorithm::hem_random;
  if (name == "rbm") return Algorithm::rbm;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::local_max: return "localmax";
    case Algorithm::greedy: return "greedy";
    case Algorithm::gpa: return "gpa";
    case Algorithm::hem: return "hem";
    case Algorithm::hem_random: return "hem-random";
    case Algorithm::rbm: return "rbm";
  }
  return "?";
}

MatchResult run_matcher(Algorithm a, const Graph& g, std::uint64_t seed, bool rerandomize) {
  switch (a) {
    case Algorithm::local_max: return local_max_seq(g, {seed, rerandomize});
    case Algorithm::greedy: return greedy(g, seed);
    case Algorithm::gpa: return gpa(g, seed);
    case Algorithm::hem: return hem(g, seed, false);
    case Algorithm::hem_random: return hem(g, seed, true);
    case Algorithm::rbm: return rbm(g, seed);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace localmax
