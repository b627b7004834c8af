#pragma once

#include <vector>

#include "localmax/graph.hpp"

namespace localmax {

/// Set of matched edge ids (kept sorted) plus the per-vertex mate table.
class Matching {
 public:
  Matching() = default;
  explicit Matching(VertexId n) : mate_(n, kNoVertex) {}

  /// Builds a matching from raw edge ids without checking validity; mates are
  /// filled in edge order, so conflicting edges leave a table that
  /// validate_matching will reject.
  static Matching from_edges(const Graph& g, std::vector<EdgeId> edges);

  void add(const Graph& g, EdgeId e);

  bool is_matched(VertexId v) const { return mate_[v] != kNoVertex; }
  VertexId mate(VertexId v) const { return mate_[v]; }
  const std::vector<EdgeId>& edges() const { return edges_; }
  const std::vector<VertexId>& mates() const { return mate_; }
  std::size_t size() const { return edges_.size(); }

  double weight(const Graph& g) const;

  /// Sorts the edge list; all matchers return normalized matchings.
  void normalize();

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<EdgeId> edges_;
  std::vector<VertexId> mate_;
};

struct MatchingCheck {
  bool valid = false;
  bool maximal = false;
};

/// Never throws; malformed input (bad ids, wrong table size) is simply invalid.
MatchingCheck validate_matching(const Graph& g, const Matching& m);

}  // namespace localmax
