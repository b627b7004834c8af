#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "localmax/bench.hpp"
#include "localmax/bsp.hpp"
#include "localmax/generators.hpp"
#include "localmax/io.hpp"
#include "localmax/matchers.hpp"
#include "localmax/oracle.hpp"
#include "localmax/pram.hpp"

using namespace localmax;

namespace {

struct GenOpts {
  std::string family = "random";
  std::vector<unsigned> xs{10};
  std::vector<unsigned> alphas{4};
  std::string weights = "random";
  std::vector<std::uint64_t> seeds{1};
};

void add_gen_opts(CLI::App* cmd, GenOpts& o, bool many) {
  cmd->add_option("--family", o.family, "random or rgg")->check(CLI::IsMember({"random", "rgg"}));
  auto* x = cmd->add_option("--x", o.xs, "log2 of the vertex count");
  auto* a = cmd->add_option("--alpha", o.alphas, "average degree m/n for the random family");
  cmd->add_option("--weights", o.weights, "unit, random or euclidean")
      ->check(CLI::IsMember({"unit", "random", "euclidean"}));
  if (many) {
    x->delimiter(',');
    a->delimiter(',');
    cmd->add_option("--seeds,--seed", o.seeds, "comma separated seeds")->delimiter(',');
  } else {
    x->expected(1);
    a->expected(1);
    cmd->add_option("--seed", o.seeds, "seed")->expected(1);
  }
}

GeneratorSpec single_spec(const GenOpts& o) {
  return {parse_family(o.family), o.xs.front(), o.alphas.front(), o.seeds.front(), parse_weight_mode(o.weights)};
}

void emit(const CsvTable& t, const std::string& out, bool append, const std::vector<std::string>& preamble) {
  if (out.empty() || out == "-") {
    write_csv(t, std::cout, preamble);
  } else {
    write_csv(t, out, append, preamble);
  }
}

int cmd_gen(const GenOpts& o, const std::string& out, const std::string& graph_format) {
  const Graph g = generate(single_spec(o));
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty() && out != "-") {
    file.open(out);
    if (!file) throw IoError("cannot open " + out + " for writing");
    os = &file;
  }
  if (graph_format == "mtx") {
    write_matrix_market(g, *os);
  } else {
    write_edge_list(g, *os);
  }
  std::cerr << "n=" << g.num_vertices() << " m=" << g.num_edges() << "\n";
  return 0;
}

int cmd_match(const GenOpts& o, const std::string& input, const std::string& alg_name, const std::string& engine_name,
              std::uint32_t p, bool rerandomize, const std::string& out) {
  const Graph g = input.empty() ? generate(single_spec(o)) : read_graph(input);
  const Algorithm alg = parse_algorithm(alg_name);
  const Engine engine = parse_engine(engine_name);
  const std::uint64_t seed = o.seeds.front();

  MatchResult res;
  std::size_t conflicts = 0;
  std::vector<std::string> invariant_failures;
  if (alg == Algorithm::local_max && engine == Engine::pram) {
    auto run = pram_local_max(g, {seed, rerandomize}, /*checked=*/true);
    conflicts = run.write_conflicts;
    invariant_failures = std::move(run.invariant_failures);
    res = std::move(run.result);
  } else if (alg == Algorithm::local_max && engine == Engine::bsp) {
    res = bsp_local_max(g, std::min<std::uint32_t>(p, std::max<VertexId>(g.num_vertices(), 1)), {seed, rerandomize});
  } else {
    res = run_matcher(alg, g, seed, rerandomize);
  }
  const auto check = validate_matching(g, res.matching);

  std::cout << "n=" << g.num_vertices() << " m=" << g.num_edges() << " alg=" << to_string(alg)
            << " size=" << res.matching.size() << " weight=" << format_double(res.matching.weight(g))
            << " rounds=" << res.trace.total_rounds() << " valid=" << check.valid << " maximal=" << check.maximal
            << "\n";
  if (!out.empty()) {
    CsvTable t{{"u", "v", "w"}, {}};
    for (EdgeId e : res.matching.edges()) {
      const auto& r = g.edge(e);
      t.rows.push_back({std::to_string(r.u), std::to_string(r.v), format_double(r.w)});
    }
    emit(t, out, false, {});
  }
  for (const auto& f : invariant_failures) std::cerr << "invariant failure: " << f << "\n";
  if (conflicts > 0) std::cerr << "write conflicts: " << conflicts << "\n";
  return check.valid && check.maximal && conflicts == 0 && invariant_failures.empty() ? 0 : 1;
}

int cmd_bench(const GenOpts& o, const std::vector<std::string>& inputs, const std::vector<std::string>& algs,
              const std::string& engine, std::uint32_t p, bool rerandomize, bool timing, const std::string& out,
              bool append) {
  SuiteConfig cfg;
  std::vector<unsigned> xs = o.xs;
  if (xs.empty() && inputs.empty()) xs = {10};
  cfg.instances = expand_instances(parse_family(o.family), xs, o.alphas, parse_weight_mode(o.weights));
  cfg.files.assign(inputs.begin(), inputs.end());
  if (!algs.empty()) {
    cfg.algorithms.clear();
    for (const auto& a : algs) cfg.algorithms.push_back(parse_algorithm(a));
  }
  cfg.engine = parse_engine(engine);
  cfg.p = p;
  cfg.seeds = o.seeds;
  cfg.rerandomize = rerandomize;
  cfg.timing = timing;

  const auto records = run_suite(cfg);
  emit(bench_table(records), out, append, bench_preamble());

  int status = 0;
  for (const auto& r : records) {
    if (!(r.ratio_vs_gpa > 0.0) && r.m > 0) {
      std::cerr << "non-positive ratio for " << r.algorithm << " on " << r.instance << "\n";
      status = 1;
    }
  }
  for (const auto& s : summarize(records)) {
    std::cerr << s.algorithm << ": records=" << s.records << " mean_ratio=" << format_double(s.mean_ratio)
              << " min_ratio=" << format_double(s.min_ratio) << " mean_rounds=" << format_double(s.mean_rounds)
              << " max_rounds=" << s.max_rounds << "\n";
  }
  return status;
}

int cmd_shrink(const GenOpts& o, std::size_t count, bool rerandomize, const std::string& out) {
  ShrinkConfig cfg;
  cfg.family = parse_family(o.family);
  cfg.x = o.xs.front();
  cfg.alpha = o.alphas.front();
  cfg.first_seed = o.seeds.front();
  cfg.seeds = count;
  cfg.rerandomize = rerandomize;
  const auto rep = shrink_report(cfg);
  emit(shrink_table(rep), out, false, {"localmax-shrink schema=1"});
  std::cerr << "runs=" << rep.runs << " mean_removed_fraction=" << format_double(rep.mean_removed_fraction)
            << " mean_survivor_fraction=" << format_double(rep.mean_survivor_fraction)
            << " pooled_survivor_fraction=" << format_double(rep.pooled_survivor_fraction)
            << " mean_rounds=" << format_double(rep.mean_rounds) << " max_rounds=" << rep.max_rounds
            << " round_bound_violations=" << rep.round_bound_violations << "\n";
  return rep.round_bound_violations == 0 && (rep.runs == 0 || rep.mean_removed_fraction >= 0.5) ? 0 : 1;
}

int cmd_audit(const std::vector<std::string>& algs, std::size_t trials, std::uint64_t seed) {
  int status = 0;
  std::vector<Algorithm> list;
  if (algs.empty()) {
    list.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
  } else {
    for (const auto& a : algs) list.push_back(parse_algorithm(a));
  }
  for (Algorithm a : list) {
    const auto rep = approximation_audit(a, trials, seed);
    std::cout << to_string(a) << ": trials=" << rep.trials << " min_ratio=" << format_double(rep.min_ratio)
              << " mean_ratio=" << format_double(rep.mean_ratio) << " below_half=" << rep.below_half
              << (rep.half_bound_enforced ? "" : " (not enforced)") << " invalid=" << rep.invalid
              << " non_maximal=" << rep.non_maximal << " above_opt=" << rep.above_opt
              << (rep.passed() ? " ok" : " FAILED") << "\n";
    for (std::size_t i = 0; i < rep.failures.size() && i < 10; ++i) std::cerr << "  " << rep.failures[i] << "\n";
    if (!rep.passed()) status = 1;
  }
  return status;
}

int cmd_crosscheck(const GenOpts& o, const std::vector<std::string>& inputs, const std::vector<std::uint32_t>& ps,
                   bool rerandomize) {
  std::vector<NamedGraph> graphs;
  if (inputs.empty()) {
    for (const auto& spec : expand_instances(parse_family(o.family), o.xs, o.alphas, parse_weight_mode(o.weights))) {
      GeneratorSpec s = spec;
      s.seed = o.seeds.front();
      graphs.push_back({s.id(), generate(s)});
    }
  }
  for (const auto& path : inputs) graphs.push_back({path, read_graph(path)});
  const auto rep = engine_cross_check(graphs, o.seeds, ps, rerandomize);
  std::cout << "comparisons=" << rep.comparisons << " mismatches=" << rep.mismatches.size()
            << " pram_runs=" << rep.pram_runs << " write_conflicts=" << rep.write_conflicts
            << " invariant_failures=" << rep.invariant_failures.size()
            << " max_work_ratio=" << format_double(rep.max_work_ratio)
            << " max_element_ops_ratio=" << format_double(rep.max_element_ops_ratio) << "\n";
  for (const auto& m : rep.mismatches) std::cerr << "mismatch: " << m << "\n";
  for (const auto& f : rep.invariant_failures) std::cerr << "invariant failure: " << f << "\n";
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local max matching toolkit"};
  app.require_subcommand(1);

  std::string out;
  std::string format = "csv";
  bool rerandomize = true;
  std::string alg = "localmax";
  std::vector<std::string> algs;
  std::string engine = "seq";
  std::uint32_t p = 4;
  std::vector<std::string> inputs;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "output path, '-' for stdout");
    cmd->add_option("--format", format, "table format")->check(CLI::IsMember({"csv"}));
  };
  auto add_rerandomize = [&](CLI::App* cmd) {
    cmd->add_flag("--rerandomize,!--no-rerandomize", rerandomize, "fresh tie-break salts every round (default on)");
  };

  GenOpts gen_o;
  auto* gen = app.add_subcommand("gen", "generate a graph");
  add_gen_opts(gen, gen_o, false);
  std::string graph_format = "edges";
  gen->add_option("--out", out, "output path, '-' for stdout");
  gen->add_option("--graph-format", graph_format, "edges or mtx")->check(CLI::IsMember({"edges", "mtx"}));

  GenOpts match_o;
  auto* match = app.add_subcommand("match", "run one matcher and validate the result");
  add_gen_opts(match, match_o, false);
  add_common(match);
  add_rerandomize(match);
  std::string match_input;
  match->add_option("--input", match_input, "MatrixMarket or edge-list file instead of a generator");
  match->add_option("--alg", alg, "localmax, greedy, gpa, hem, hem-random or rbm");
  match->add_option("--engine", engine, "seq, pram or bsp (local max only)")
      ->check(CLI::IsMember({"seq", "pram", "bsp"}));
  match->add_option("--p", p, "BSP worker count")->check(CLI::PositiveNumber);

  GenOpts bench_o;
  bench_o.xs.clear();
  bench_o.seeds = {1, 2, 3, 4, 5};
  auto* bench = app.add_subcommand("bench", "quality and round statistics against GPA");
  add_gen_opts(bench, bench_o, true);
  add_common(bench);
  add_rerandomize(bench);
  bool no_timing = false;
  bool append = false;
  bench->add_option("--input", inputs, "graph files to include")->delimiter(',');
  bench->add_option("--alg", algs, "algorithms, comma separated (default all)")->delimiter(',');
  bench->add_option("--engine", engine, "engine for local max")->check(CLI::IsMember({"seq", "pram", "bsp"}));
  bench->add_option("--p", p, "BSP worker count")->check(CLI::PositiveNumber);
  bench->add_flag("--no-timing", no_timing, "write 0 for millis so output is reproducible");
  bench->add_flag("--append", append, "append rows to an existing CSV");

  GenOpts shrink_o;
  shrink_o.xs = {14};
  auto* shrink = app.add_subcommand("shrink", "per-round edge survival under unit weights");
  add_gen_opts(shrink, shrink_o, false);
  add_common(shrink);
  add_rerandomize(shrink);
  std::size_t shrink_runs = 100;
  shrink->add_option("--runs", shrink_runs, "number of consecutive seeds starting at --seed");

  auto* audit = app.add_subcommand("audit", "compare matchers with an exact oracle on small graphs");
  std::size_t trials = 1000;
  std::uint64_t audit_seed = 1;
  audit->add_option("--alg", algs, "algorithms, comma separated (default all)")->delimiter(',');
  audit->add_option("--trials", trials, "number of instances");
  audit->add_option("--seed", audit_seed, "instance seed");

  GenOpts cross_o;
  cross_o.xs = {10};
  cross_o.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto* cross = app.add_subcommand("crosscheck", "check seq, PRAM and BSP engines agree");
  add_gen_opts(cross, cross_o, true);
  add_rerandomize(cross);
  std::vector<std::uint32_t> ps{1, 2, 4, 8};
  cross->add_option("--input", inputs, "graph files to include")->delimiter(',');
  cross->add_option("--p", ps, "BSP worker counts")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_o, out, graph_format);
    if (*match) return cmd_match(match_o, match_input, alg, engine, p, rerandomize, out);
    if (*bench) return cmd_bench(bench_o, inputs, algs, engine, p, rerandomize, !no_timing, out, append);
    if (*shrink) return cmd_shrink(shrink_o, shrink_runs, rerandomize, out);
    if (*audit) return cmd_audit(algs, trials, audit_seed);
    if (*cross) return cmd_crosscheck(cross_o, inputs, ps, rerandomize);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
