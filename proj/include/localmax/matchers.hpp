#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "localmax/graph.hpp"
#include "localmax/tie_key.hpp"
#include "localmax/trace.hpp"

namespace localmax {

/// Settings shared by every local max engine. Engines given equal options
/// see identical tie keys and therefore return identical matchings.
struct LocalMaxOptions {
  std::uint64_t seed = 0;
  bool rerandomize = true;
};

/// Candidate edge per vertex. An unset entry is the dummy edge, which orders
/// below every real key.
class CandidateTable {
 public:
  explicit CandidateTable(VertexId n) : edge_(n, kNoEdge) {}

  EdgeId operator[](VertexId v) const { return edge_[v]; }
  /// Replaces the candidate of v with e if e's key is larger.
  void offer(VertexId v, EdgeId e, const std::vector<TieKey>& keys) {
    if (edge_[v] == kNoEdge || keys[edge_[v]] < keys[e]) edge_[v] = e;
  }
  void reset(VertexId v) { edge_[v] = kNoEdge; }

 private:
  std::vector<EdgeId> edge_;
};

/// Local max: match every edge that beats all its neighbours, drop edges
/// touching matched vertices, repeat. Per round work is linear in the number
/// of surviving edges.
MatchResult local_max_seq(const Graph& g, const LocalMaxOptions& opts = {});

/// Scans edges by decreasing key and takes every edge with two free endpoints.
MatchResult greedy(const Graph& g, std::uint64_t seed = 0);

/// Global path algorithm: greedy degree-2 subgraph without odd cycles, exact
/// DP on its paths and even cycles, then a greedy fill-in sweep so the result
/// is maximal.
MatchResult gpa(const Graph& g, std::uint64_t seed = 0);

/// Heavy edge matching: each free vertex, in input or seeded random order,
/// takes its heaviest edge to a free neighbour.
MatchResult hem(const Graph& g, std::uint64_t seed = 0, bool randomize_order = false);

/// Colour of vertex v in RBM round `round`; true = blue (proposer).
bool rbm_is_blue(std::uint64_t seed, std::uint32_t round, VertexId v);

/// Red-blue matching. Each round, live vertices flip a fair coin; blue
/// vertices propose along their heaviest edge to a red neighbour and each red
/// vertex accepts its heaviest proposal. This is our reading of a method the
/// source only cites.
MatchResult rbm(const Graph& g, std::uint64_t seed = 0);

/// Maximum-weight matching of a path given its edge weights in order. Returns
/// the chosen positions (ascending).
std::vector<std::size_t> path_dp(const std::vector<double>& weights);

enum class Algorithm { local_max, greedy, gpa, hem, hem_random, rbm };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm a);
inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::local_max, Algorithm::greedy, Algorithm::gpa,
                                               Algorithm::hem, Algorithm::hem_random, Algorithm::rbm};

MatchResult run_matcher(Algorithm a, const Graph& g, std::uint64_t seed, bool rerandomize = true);

}  // namespace localmax
