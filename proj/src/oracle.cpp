#include "localmax/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "localmax/tie_key.hpp"

namespace localmax {

OracleResult max_weight_matching_bruteforce(const Graph& g) {
  const EdgeId m = g.num_edges();
  if (m > kOracleMaxEdges) {
    throw GraphError("oracle limited to " + std::to_string(kOracleMaxEdges) + " edges, got " + std::to_string(m));
  }
  std::vector<EdgeId> order(m);
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return g.edge(a).w > g.edge(b).w; });
  std::vector<double> suffix(m + 1, 0.0);
  for (EdgeId i = m; i-- > 0;) suffix[i] = suffix[i + 1] + g.edge(order[i]).w;

  OracleResult best;
  std::vector<std::uint8_t> used(g.num_vertices(), 0);
  std::vector<EdgeId> current;

  auto search = [&](auto&& self, EdgeId i, double weight) -> void {
    ++best.instances_enumerated;
    if (weight > best.opt_weight) {
      best.opt_weight = weight;
      best.opt_edges = current;
    }
    if (i == m || weight + suffix[i] <= best.opt_weight) return;
    const auto& e = g.edge(order[i]);
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = 1;
      current.push_back(order[i]);
      self(self, i + 1, weight + e.w);
      current.pop_back();
      used[e.u] = used[e.v] = 0;
    }
    self(self, i + 1, weight);
  };
  search(search, 0, 0.0);
  std::sort(best.opt_edges.begin(), best.opt_edges.end());
  return best;
}

Graph audit_instance(std::size_t trial, std::uint64_t seed) {
  std::mt19937_64 rng(mix64(seed ^ mix64(trial)));
  const auto n = static_cast<VertexId>(2 + rng() % 11);  // 2..12
  const std::uint64_t pairs = std::uint64_t{n} * (n - 1) / 2;
  const auto m = static_cast<std::size_t>(rng() % (std::min<std::uint64_t>(pairs, kOracleMaxEdges) + 1));

  std::vector<std::pair<VertexId, VertexId>> all;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  std::shuffle(all.begin(), all.end(), rng);

  std::vector<InputEdge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    double w = 1.0;
    switch (trial % 4) {
      case 0: w = unit_interval(rng()); break;
      case 1: w = static_cast<double>(1 + rng() % 3); break;
      case 2: w = 1.0; break;
      case 3: w = static_cast<double>(1 + rng() % 10); break;
    }
    edges.push_back({all[i].first, all[i].second, w});
  }
  return build_graph(n, edges);
}

AuditReport approximation_audit(Algorithm algorithm, std::size_t trials, std::uint64_t seed) {
  AuditReport report;
  report.algorithm = algorithm;
  report.trials = trials;
  report.half_bound_enforced = algorithm == Algorithm::local_max || algorithm == Algorithm::greedy;
  if (trials == 0) return report;

  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Graph g = audit_instance(t, seed);
    const auto opt = max_weight_matching_bruteforce(g);
    const auto got = run_matcher(algorithm, g, mix64(seed + t));
    const auto check = validate_matching(g, got.matching);
    const double w = got.matching.weight(g);
    const double ratio = opt.opt_weight > 0.0 ? w / opt.opt_weight : 1.0;
    sum += ratio;
    report.min_ratio = std::min(report.min_ratio, ratio);
    auto note = [&](const std::string& what) {
      report.failures.push_back("trial " + std::to_string(t) + ": " + what);
    };
    if (!check.valid) {
      ++report.invalid;
      note("invalid matching");
    } else if (!check.maximal) {
      ++report.non_maximal;
      note("matching not maximal");
    }
    // 1e-9 relative slack absorbs summation order differences
    if (w > opt.opt_weight * (1.0 + 1e-9) + 1e-12) {
      ++report.above_opt;
      note("weight exceeds oracle optimum");
    }
    if (ratio < 0.5) {
      ++report.below_half;
      if (report.half_bound_enforced) note("ratio " + std::to_string(ratio) + " below 1/2");
    }
  }
  report.mean_ratio = sum / static_cast<double>(trials);
  return report;
}

}  // namespace localmax
