#include "localmax/matching.hpp"

#include <algorithm>

namespace localmax {

Matching Matching::from_edges(const Graph& g, std::vector<EdgeId> edges) {
  Matching m(g.num_vertices());
  for (EdgeId e : edges) {
    m.edges_.push_back(e);
    if (e >= g.num_edges()) continue;
    const auto& rec = g.edge(e);
    if (m.mate_[rec.u] == kNoVertex) m.mate_[rec.u] = rec.v;
    if (m.mate_[rec.v] == kNoVertex) m.mate_[rec.v] = rec.u;
  }
  m.normalize();
  return m;
}

void Matching::add(const Graph& g, EdgeId e) {
  const auto& rec = g.edge(e);
  edges_.push_back(e);
  mate_[rec.u] = rec.v;
  mate_[rec.v] = rec.u;
}

double Matching::weight(const Graph& g) const {
  double total = 0.0;
  for (EdgeId e : edges_) total += g.edge(e).w;
  return total;
}

void Matching::normalize() { std::sort(edges_.begin(), edges_.end()); }

MatchingCheck validate_matching(const Graph& g, const Matching& m) {
  MatchingCheck check;
  const VertexId n = g.num_vertices();
  if (m.mates().size() != n) return check;

  std::vector<std::uint8_t> covered(n, 0);
  for (EdgeId e : m.edges()) {
    if (e >= g.num_edges()) return check;
    const auto& rec = g.edge(e);
    if (covered[rec.u] || covered[rec.v]) return check;
    covered[rec.u] = covered[rec.v] = 1;
    if (m.mate(rec.u) != rec.v || m.mate(rec.v) != rec.u) return check;
  }
  // no stray mate entries outside the edge set
  for (VertexId v = 0; v < n; ++v) {
    if (m.is_matched(v) != static_cast<bool>(covered[v])) return check;
  }
  check.valid = true;

  check.maximal = std::none_of(g.edges().begin(), g.edges().end(), [&](const EdgeRecord& e) {
    return !covered[e.u] && !covered[e.v];
  });
  return check;
}

}  // namespace localmax
