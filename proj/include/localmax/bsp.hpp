#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "localmax/graph.hpp"
#include "localmax/matchers.hpp"
#include "localmax/trace.hpp"

namespace localmax {

/// Vertex-to-worker assignment by consecutive id ranges. Each worker stores
/// every edge incident to a vertex it owns, so a cut edge is stored twice.
struct Partition {
  std::uint32_t p = 1;
  std::vector<VertexId> range_begin;  // size p+1; worker i owns [range_begin[i], range_begin[i+1])
  std::vector<std::vector<EdgeId>> local_edges;
  std::vector<std::size_t> degree_sum;  // per worker
  std::size_t cut_edges = 0;

  std::uint32_t owner(VertexId v) const;
  /// Largest per-worker degree sum divided by the mean (1.0 when m = 0).
  double max_imbalance() const;
};

/// Sweeps the degree prefix sums and cuts where they cross multiples of 2m/p.
/// Every range is non-empty. Throws GraphError when p == 0 or p > n.
Partition partition_graph(const Graph& g, std::uint32_t p);

// Wire sizes used for the byte estimate of exchanged records.
inline constexpr std::size_t kCandidateRecordBytes = 24;  // vertex index, weight, salt, edge id
inline constexpr std::size_t kStatusRecordBytes = 4;      // vertex index

/// Local max on p logical workers, one thread each. Per round: local
/// candidates, exchange of boundary candidates (merged by max), matching of
/// mutual candidates, exchange of matched boundary vertices, removal. The
/// result equals local_max_seq with the same options for every p.
MatchResult bsp_local_max(const Graph& g, std::uint32_t p, const LocalMaxOptions& opts = {});
MatchResult bsp_local_max(const Graph& g, const Partition& part, const LocalMaxOptions& opts = {});

}  // namespace localmax
