#include "localmax/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "localmax/bsp.hpp"
#include "localmax/pram.hpp"

namespace localmax {

Engine parse_engine(std::string_view s) {
  if (s == "seq") return Engine::seq;
  if (s == "pram") return Engine::pram;
  if (s == "bsp") return Engine::bsp;
  throw std::invalid_argument("unknown engine '" + std::string(s) + "'");
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::seq: return "seq";
    case Engine::pram: return "pram";
    case Engine::bsp: return "bsp";
  }
  return "?";
}

std::vector<GeneratorSpec> expand_instances(Family family, const std::vector<unsigned>& xs,
                                            const std::vector<unsigned>& alphas, WeightMode weights) {
  std::vector<GeneratorSpec> out;
  for (unsigned x : xs) {
    if (family == Family::rgg) {
      out.push_back({family, x, 0, 0, weights});
      continue;
    }
    for (unsigned a : alphas) out.push_back({family, x, a, 0, weights});
  }
  return out;
}

namespace {

MatchResult run_engine(Algorithm alg, Engine engine, std::uint32_t p, const Graph& g, std::uint64_t seed,
                       bool rerandomize) {
  if (alg != Algorithm::local_max || engine == Engine::seq) return run_matcher(alg, g, seed, rerandomize);
  if (engine == Engine::pram) return pram_local_max(g, {seed, rerandomize}).result;
  return bsp_local_max(g, p, {seed, rerandomize});
}

void run_instance(const SuiteConfig& cfg, const Graph& g, BenchRecord base, std::vector<BenchRecord>& out) {
  const double gpa_weight = gpa(g, base.seed).matching.weight(g);
  for (Algorithm alg : cfg.algorithms) {
    const bool engine_applies = alg == Algorithm::local_max;
    const auto res = run_engine(alg, cfg.engine, cfg.p, g, base.seed, cfg.rerandomize);
    BenchRecord r = base;
    r.algorithm = std::string(to_string(alg));
    r.engine = std::string(to_string(engine_applies ? cfg.engine : Engine::seq));
    r.p = engine_applies && cfg.engine == Engine::bsp ? cfg.p : 1;
    r.n = g.num_vertices();
    r.m = g.num_edges();
    r.weight = res.matching.weight(g);
    r.ratio_vs_gpa = gpa_weight > 0.0 ? r.weight / gpa_weight : 1.0;
    r.rounds = res.trace.total_rounds();
    r.mean_removed_fraction = res.trace.mean_removed_fraction();
    r.millis = cfg.timing ? res.trace.wall_millis : 0.0;
    r.messages = res.trace.total_messages();
    r.message_bytes = res.trace.total_message_bytes();
    out.push_back(std::move(r));
  }
}

}  // namespace

std::vector<BenchRecord> run_suite(const SuiteConfig& cfg) {
  std::vector<BenchRecord> out;
  for (const auto& spec : cfg.instances) {
    for (std::uint64_t seed : cfg.seeds) {
      GeneratorSpec s = spec;
      s.seed = seed;
      const Graph g = generate(s);
      BenchRecord base;
      base.instance = s.id();
      base.family = std::string(to_string(s.family));
      base.x = s.x;
      base.alpha = s.family == Family::random ? s.alpha : 0;
      base.weights = std::string(to_string(s.weights));
      base.seed = seed;
      run_instance(cfg, g, base, out);
    }
  }
  for (const auto& path : cfg.files) {
    const Graph g = read_graph(path);
    for (std::uint64_t seed : cfg.seeds) {
      BenchRecord base;
      base.instance = path.filename().string();
      base.family = "file";
      base.weights = "file";
      base.seed = seed;
      run_instance(cfg, g, base, out);
    }
  }
  return out;
}

std::vector<std::string> bench_preamble() {
  return {"localmax-bench schema=" + std::to_string(kBenchSchemaVersion)};
}

CsvTable bench_table(const std::vector<BenchRecord>& records) {
  CsvTable t;
  t.header = {"instance", "family", "x", "alpha", "weights", "algorithm", "engine", "p", "seed", "n", "m",
              "weight", "ratio_vs_gpa", "rounds", "mean_removed_fraction", "millis", "messages",
              "message_bytes"};
  for (const auto& r : records) {
    t.rows.push_back({r.instance, r.family, std::to_string(r.x), std::to_string(r.alpha), r.weights, r.algorithm,
                      r.engine, std::to_string(r.p), std::to_string(r.seed), std::to_string(r.n),
                      std::to_string(r.m), format_double(r.weight), format_double(r.ratio_vs_gpa),
                      std::to_string(r.rounds), format_double(r.mean_removed_fraction), format_double(r.millis),
                      std::to_string(r.messages), std::to_string(r.message_bytes)});
  }
  return t;
}

std::vector<QualitySummary> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::string, QualitySummary> by_alg;
  std::vector<std::string> order;
  for (const auto& r : records) {
    auto [it, inserted] = by_alg.try_emplace(r.algorithm);
    QualitySummary& s = it->second;
    if (inserted) {
      s.algorithm = r.algorithm;
      s.min_ratio = r.ratio_vs_gpa;
      order.push_back(r.algorithm);
    }
    ++s.records;
    s.mean_ratio += r.ratio_vs_gpa;
    s.min_ratio = std::min(s.min_ratio, r.ratio_vs_gpa);
    s.mean_rounds += static_cast<double>(r.rounds);
    s.max_rounds = std::max(s.max_rounds, r.rounds);
  }
  std::vector<QualitySummary> out;
  for (const auto& name : order) {
    QualitySummary s = by_alg[name];
    s.mean_ratio /= static_cast<double>(s.records);
    s.mean_rounds /= static_cast<double>(s.records);
    out.push_back(s);
  }
  return out;
}

double round_bound(std::size_t m) { return 4.0 * std::log2(static_cast<double>(m) + 2.0); }

ShrinkReport shrink_report(const ShrinkConfig& cfg) {
  ShrinkReport report;
  std::vector<double> survivor_sum;
  std::vector<std::size_t> reached;
  double pair_sum = 0.0;
  std::size_t pairs = 0;
  std::size_t total_before = 0;
  std::size_t total_survivors = 0;
  std::size_t rounds_sum = 0;

  for (std::size_t i = 0; i < cfg.seeds; ++i) {
    const std::uint64_t seed = cfg.first_seed + i;
    const Graph g = generate({cfg.family, cfg.x, cfg.alpha, seed, WeightMode::unit});
    const auto res = local_max_seq(g, {seed, cfg.rerandomize});
    const auto& rounds = res.trace.rounds;
    if (survivor_sum.size() < rounds.size()) {
      survivor_sum.resize(rounds.size(), 0.0);
      reached.resize(rounds.size(), 0);
    }
    for (std::size_t r = 0; r < rounds.size(); ++r) {
      const double survivors = 1.0 - rounds[r].removed_fraction();
      survivor_sum[r] += survivors;
      ++reached[r];
      pair_sum += survivors;
      ++pairs;
      total_before += rounds[r].edges_before;
      total_survivors += rounds[r].edges_before - rounds[r].edges_removed;
    }
    ++report.runs;
    rounds_sum += rounds.size();
    report.max_rounds = std::max(report.max_rounds, rounds.size());
    if (static_cast<double>(rounds.size()) > round_bound(g.num_edges())) ++report.round_bound_violations;
  }
  for (std::size_t r = 0; r < survivor_sum.size(); ++r) {
    const double s = survivor_sum[r] / static_cast<double>(reached[r]);
    report.rows.push_back({r + 1, reached[r], s, 1.0 - s});
  }
  if (pairs > 0) {
    report.mean_survivor_fraction = pair_sum / static_cast<double>(pairs);
    report.mean_removed_fraction = 1.0 - report.mean_survivor_fraction;
  }
  if (total_before > 0) {
    report.pooled_survivor_fraction = static_cast<double>(total_survivors) / static_cast<double>(total_before);
  }
  if (report.runs > 0) report.mean_rounds = static_cast<double>(rounds_sum) / static_cast<double>(report.runs);
  return report;
}

CsvTable shrink_table(const ShrinkReport& report) {
  CsvTable t;
  t.header = {"round", "runs", "mean_survivor_fraction", "mean_removed_fraction"};
  for (const auto& row : report.rows) {
    t.rows.push_back({std::to_string(row.round), std::to_string(row.runs), format_double(row.mean_survivor_fraction),
                      format_double(row.mean_removed_fraction)});
  }
  return t;
}

CrossCheckReport engine_cross_check(const std::vector<NamedGraph>& instances, const std::vector<std::uint64_t>& seeds,
                                    const std::vector<std::uint32_t>& ps, bool rerandomize) {
  CrossCheckReport report;
  for (const auto& inst : instances) {
    const Graph& g = inst.graph;
    const double scale = static_cast<double>(g.num_vertices()) + 2.0 * g.num_edges();
    for (std::uint64_t seed : seeds) {
      const LocalMaxOptions opts{seed, rerandomize};
      const auto where = inst.name + " seed " + std::to_string(seed);
      const auto reference = local_max_seq(g, opts);

      const auto pram = pram_local_max(g, opts, /*checked=*/true);
      ++report.pram_runs;
      ++report.comparisons;
      if (pram.result.matching != reference.matching) report.mismatches.push_back(where + ": seq != pram");
      report.write_conflicts += pram.write_conflicts;
      for (const auto& f : pram.invariant_failures) report.invariant_failures.push_back(where + ": " + f);
      if (scale > 0.0) {
        const double ratio = static_cast<double>(pram.work.live_elements) / scale;
        if (ratio > report.max_work_ratio) {
          report.max_work_ratio = ratio;
          report.worst_work_instance = where;
        }
        report.max_element_ops_ratio =
            std::max(report.max_element_ops_ratio, static_cast<double>(pram.work.element_ops) / scale);
      }

      for (std::uint32_t p : ps) {
        if (g.num_vertices() > 0 && p > g.num_vertices()) continue;
        ++report.comparisons;
        const auto bsp = bsp_local_max(g, p, opts);
        if (bsp.matching != reference.matching) {
          report.mismatches.push_back(where + ": seq != bsp(p=" + std::to_string(p) + ")");
        }
      }
    }
  }
  return report;
}

}  // namespace localmax
