#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "localmax/generators.hpp"
#include "localmax/io.hpp"
#include "localmax/matchers.hpp"

namespace localmax {

enum class Engine { seq, pram, bsp };
Engine parse_engine(std::string_view s);
std::string_view to_string(Engine e);

inline constexpr int kBenchSchemaVersion = 1;

/// One (instance, algorithm, seed) measurement.
struct BenchRecord {
  std::string instance;
  std::string family;  // "random", "rgg" or "file"
  unsigned x = 0;
  unsigned alpha = 0;
  std::string weights;
  std::string algorithm;
  std::string engine;
  std::uint32_t p = 1;
  std::uint64_t seed = 0;
  VertexId n = 0;
  EdgeId m = 0;
  double weight = 0.0;
  double ratio_vs_gpa = 1.0;  // 1.0 when both are empty
  std::size_t rounds = 0;
  double mean_removed_fraction = 0.0;
  double millis = 0.0;
  std::size_t messages = 0;
  std::size_t message_bytes = 0;
};

struct SuiteConfig {
  std::vector<GeneratorSpec> instances;  // seed field is ignored; see seeds
  std::vector<std::filesystem::path> files;
  std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
  Engine engine = Engine::seq;  // applies to local max only
  std::uint32_t p = 4;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  bool rerandomize = true;
  bool timing = true;  // false writes 0 ms so output is bitwise reproducible
};

/// Expands families x sizes x alphas into instance specs.
std::vector<GeneratorSpec> expand_instances(Family family, const std::vector<unsigned>& xs,
                                            const std::vector<unsigned>& alphas, WeightMode weights);

/// Runs every algorithm on every (instance, seed); generated instances use
/// the run seed as generator seed. GPA on the same graph is the ratio baseline.
/// Throws IoError for unreadable files.
std::vector<BenchRecord> run_suite(const SuiteConfig& config);

CsvTable bench_table(const std::vector<BenchRecord>& records);
std::vector<std::string> bench_preamble();

struct QualitySummary {
  std::string algorithm;
  std::size_t records = 0;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double mean_rounds = 0.0;
  std::size_t max_rounds = 0;
};
std::vector<QualitySummary> summarize(const std::vector<BenchRecord>& records);

struct ShrinkConfig {
  Family family = Family::random;
  unsigned x = 14;
  unsigned alpha = 4;
  std::uint64_t first_seed = 1;
  std::size_t seeds = 100;
  bool rerandomize = true;
};

struct ShrinkRow {
  std::size_t round = 0;
  std::size_t runs = 0;  // runs that reached this round
  double mean_survivor_fraction = 0.0;
  double mean_removed_fraction = 0.0;
};

struct ShrinkReport {
  std::vector<ShrinkRow> rows;
  std::size_t runs = 0;
  // averaged over every (run, round) pair
  double mean_removed_fraction = 0.0;
  double mean_survivor_fraction = 0.0;
  // total survivors over total edges entering a round, across all runs
  double pooled_survivor_fraction = 0.0;
  std::size_t max_rounds = 0;
  double mean_rounds = 0.0;
  std::size_t round_bound_violations = 0;  // runs exceeding 4 log2(m+2)
};

/// Round bound used throughout: 4 * log2(m + 2).
double round_bound(std::size_t m);

/// Unit-weight local max on a family, averaged over seeds.
ShrinkReport shrink_report(const ShrinkConfig& config);
CsvTable shrink_table(const ShrinkReport& report);

struct NamedGraph {
  std::string name;
  Graph graph;
};

struct CrossCheckReport {
  std::size_t comparisons = 0;
  std::vector<std::string> mismatches;
  std::size_t pram_runs = 0;
  std::size_t write_conflicts = 0;
  std::vector<std::string> invariant_failures;
  // live-element work / (n + 2m), worst case over runs
  double max_work_ratio = 0.0;
  double max_element_ops_ratio = 0.0;
  std::string worst_work_instance;

  bool passed() const { return mismatches.empty() && write_conflicts == 0 && invariant_failures.empty(); }
};

/// Runs local_max_seq, checked pram_local_max and bsp_local_max for every p
/// on every (instance, seed) and compares the matchings edge for edge.
CrossCheckReport engine_cross_check(const std::vector<NamedGraph>& instances,
                                    const std::vector<std::uint64_t>& seeds,
                                    const std::vector<std::uint32_t>& ps = {1, 2, 4, 8},
                                    bool rerandomize = true);

}  // namespace localmax
