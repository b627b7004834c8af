#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "localmax/graph.hpp"
#include "localmax/matchers.hpp"

namespace localmax {

inline constexpr EdgeId kOracleMaxEdges = 24;

struct OracleResult {
  double opt_weight = 0.0;
  std::vector<EdgeId> opt_edges;  // sorted
  std::size_t instances_enumerated = 0;  // search nodes visited
};

/// Exact maximum-weight matching by include/exclude branching over edges in
/// decreasing weight order, pruned when the remaining weight cannot beat the
/// incumbent. Throws GraphError above kOracleMaxEdges edges.
OracleResult max_weight_matching_bruteforce(const Graph& g);

/// Small random instance used by the audit: n <= 12, m <= 24, weight regime
/// chosen by trial index (uniform, few distinct integers, all equal, 1..10).
Graph audit_instance(std::size_t trial, std::uint64_t seed);

struct AuditReport {
  Algorithm algorithm = Algorithm::local_max;
  std::size_t trials = 0;
  double min_ratio = 1.0;
  double mean_ratio = 1.0;
  std::size_t below_half = 0;
  std::size_t invalid = 0;
  std::size_t non_maximal = 0;
  std::size_t above_opt = 0;
  bool half_bound_enforced = false;
  std::vector<std::string> failures;

  bool passed() const {
    return invalid == 0 && non_maximal == 0 && above_opt == 0 && (!half_bound_enforced || below_half == 0);
  }
};

/// Runs `algorithm` against the oracle on `trials` audit instances. The 1/2
/// bound is enforced for local max and greedy; other matchers are reported.
AuditReport approximation_audit(Algorithm algorithm, std::size_t trials, std::uint64_t seed);

}  // namespace localmax
