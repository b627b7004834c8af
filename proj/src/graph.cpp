#include "localmax/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace localmax {

double Graph::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.w;
  return total;
}

Graph build_graph(VertexId n, std::span<const InputEdge> input) {
  if (n == kNoVertex) throw GraphError("vertex count too large");

  // key = (u << 32) | v with u < v; value = index into `kept`
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(input.size());
  std::vector<InputEdge> kept;
  kept.reserve(input.size());

  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    const InputEdge& in = input[pos];
    if (in.u >= n || in.v >= n) {
      throw GraphError("edge " + std::to_string(pos) + " (" + std::to_string(in.u) + ", " +
                       std::to_string(in.v) + "): vertex id out of range for n=" +
                       std::to_string(n));
    }
    if (std::isnan(in.w) || std::isinf(in.w) || in.w < 0.0) {
      throw GraphError("edge " + std::to_string(pos) + ": weight must be finite and >= 0");
    }
    if (in.u == in.v) continue;
    const VertexId a = std::min(in.u, in.v);
    const VertexId b = std::max(in.u, in.v);
    const std::uint64_t key = (std::uint64_t{a} << 32) | b;
    auto [it, inserted] = index.try_emplace(key, kept.size());
    if (inserted) {
      kept.push_back({a, b, in.w});
    } else if (in.w > kept[it->second].w) {
      kept[it->second].w = in.w;
    }
  }

  Graph g;
  g.edges_.reserve(kept.size());
  for (const auto& e : kept) g.edges_.push_back({e.u, e.v, e.w});

  g.offsets_.assign(std::size_t{n} + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.slots_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId k = 0; k < g.edges_.size(); ++k) {
    const auto& e = g.edges_[k];
    g.slots_[fill[e.u]++] = {e.u, k};
    g.slots_[fill[e.v]++] = {e.v, k};
  }
  return g;
}

std::optional<std::string> check_adjacency(const AdjacencyView& view) {
  const std::size_t segments =
      view.identity_segments ? std::size_t{view.n} : view.segment_vertex.size();
  if (view.offsets.size() != segments + 1) return "offset array has wrong length";
  if (view.offsets.front() != 0) return "offsets[0] != 0";
  if (view.offsets.back() != 2 * view.edges.size()) return "offsets[last] != 2m";
  if (view.slots.size() != 2 * view.edges.size()) return "slot array length != 2m";

  std::vector<std::uint8_t> refs(view.edges.size(), 0);
  VertexId previous = 0;
  for (std::size_t s = 0; s < segments; ++s) {
    const VertexId v = view.identity_segments ? static_cast<VertexId>(s) : view.segment_vertex[s];
    if (v >= view.n) return "segment vertex out of range";
    if (s > 0 && v <= previous) return "segment vertices not strictly increasing";
    previous = v;
    if (view.offsets[s + 1] < view.offsets[s]) return "offsets decrease at segment " + std::to_string(s);
    for (std::size_t p = view.offsets[s]; p < view.offsets[s + 1]; ++p) {
      const Slot& slot = view.slots[p];
      if (slot.vertex != v) return "slot " + std::to_string(p) + " owned by wrong vertex";
      if (slot.edge >= view.edges.size()) return "slot " + std::to_string(p) + " points past edge array";
      const EdgeRecord& e = view.edges[slot.edge];
      const std::uint8_t bit = e.u == v ? 1 : e.v == v ? 2 : 0;
      if (bit == 0) return "slot " + std::to_string(p) + " edge not incident to owner";
      if (refs[slot.edge] & bit) return "edge " + std::to_string(slot.edge) + " referenced twice from one endpoint";
      refs[slot.edge] |= bit;
    }
  }

  std::unordered_map<std::uint64_t, EdgeId> seen;
  seen.reserve(view.edges.size());
  for (EdgeId k = 0; k < view.edges.size(); ++k) {
    const EdgeRecord& e = view.edges[k];
    if (refs[k] != 3) return "edge " + std::to_string(k) + " not referenced exactly twice";
    if (e.u == e.v) return "self-loop at edge " + std::to_string(k);
    if (e.u >= view.n || e.v >= view.n) return "edge endpoint out of range";
    if (!std::isfinite(e.w) || e.w < 0.0) return "invalid weight at edge " + std::to_string(k);
    const std::uint64_t key = (std::uint64_t{std::min(e.u, e.v)} << 32) | std::max(e.u, e.v);
    if (!seen.emplace(key, k).second) return "duplicate edge " + std::to_string(k);
  }
  return std::nullopt;
}

}  // namespace localmax
