#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace localmax {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected edge as supplied by a caller or a file reader.
struct InputEdge {
  VertexId u;
  VertexId v;
  double w;
};

/// Edge record stored in the edge array. Endpoints are normalized so u < v.
struct EdgeRecord {
  VertexId u;
  VertexId v;
  double w;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// One incidence slot of the adjacency array: (owning vertex, edge pointer).
struct Slot {
  VertexId vertex;
  EdgeId edge;
  friend bool operator==(const Slot&, const Slot&) = default;
};

// Immutable adjacency-array graph. offsets()[v] .. offsets()[v+1] is the slot
// range of v; every edge id appears in exactly two slots, one per endpoint.
// Slots within a vertex range are ordered by edge id.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  VertexId num_vertices() const { return static_cast<VertexId>(offsets_.size() - 1); }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }
  bool empty() const { return edges_.empty(); }

  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const Slot> slots() const { return slots_; }
  std::span<const EdgeRecord> edges() const { return edges_; }

  const EdgeRecord& edge(EdgeId e) const { return edges_[e]; }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Slot> incident(VertexId v) const {
    return std::span<const Slot>(slots_).subspan(offsets_[v], degree(v));
  }

  double total_weight() const;

  friend Graph build_graph(VertexId n, std::span<const InputEdge> edges);

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Slot> slots_;
  std::vector<EdgeRecord> edges_;
};

/// Builds the adjacency layout. Self-loops are dropped; of parallel edges only
/// the heaviest survives (ties go to the earlier input position). Surviving
/// edges keep their relative input order as edge ids.
/// Throws GraphError on out-of-range endpoints or NaN/negative/infinite weights.
Graph build_graph(VertexId n, std::span<const InputEdge> edges);

/// Read-only view of an adjacency layout whose segments may cover only a
/// subset of the vertices (the PRAM engine drops vertices without edges).
/// With identity_segments set, segment i belongs to vertex i and
/// segment_vertex is ignored.
struct AdjacencyView {
  VertexId n = 0;
  std::span<const VertexId> segment_vertex;
  std::span<const std::size_t> offsets;
  std::span<const Slot> slots;
  std::span<const EdgeRecord> edges;
  bool identity_segments = false;
};

/// Checks every structural invariant of an adjacency layout. Returns a
/// description of the first violation found, or nullopt.
std::optional<std::string> check_adjacency(const AdjacencyView& view);

inline AdjacencyView view_of(const Graph& g) {
  return AdjacencyView{g.num_vertices(), {}, g.offsets(), g.slots(), g.edges(), true};
}

}  // namespace localmax
