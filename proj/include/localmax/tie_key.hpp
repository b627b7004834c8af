#pragma once

#include <compare>
#include <cstdint>
#include <limits>

#include "localmax/graph.hpp"

namespace localmax {

/// Perturbed edge weight. Ordered lexicographically by (weight, salt, edge_id);
/// since edge ids are unique within a graph, no two distinct edges compare equal.
struct TieKey {
  double weight = -std::numeric_limits<double>::infinity();
  std::uint64_t salt = 0;
  EdgeId edge_id = kNoEdge;

  /// Sentinel ordering strictly below every real edge key.
  static constexpr TieKey dummy() { return TieKey{}; }
  bool is_dummy() const { return edge_id == kNoEdge; }

  friend bool operator==(const TieKey& a, const TieKey& b) {
    return a.weight == b.weight && a.salt == b.salt && a.edge_id == b.edge_id;
  }
  friend std::strong_ordering operator<=>(const TieKey& a, const TieKey& b) {
    if (a.weight < b.weight) return std::strong_ordering::less;
    if (a.weight > b.weight) return std::strong_ordering::greater;
    if (auto c = a.salt <=> b.salt; c != 0) return c;
    // dummy keys carry kNoEdge, so id is compared with dummy sorting lowest
    const std::uint64_t ia = a.edge_id == kNoEdge ? 0 : std::uint64_t{a.edge_id} + 1;
    const std::uint64_t ib = b.edge_id == kNoEdge ? 0 : std::uint64_t{b.edge_id} + 1;
    return ia <=> ib;
  }
};

/// Stateless 64-bit mixer (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

/// Seed for one round of a randomized matcher. With re-randomization off every
/// round maps to round 0, so all rounds see the same perturbation.
std::uint64_t round_seed(std::uint64_t seed, std::uint32_t round, bool rerandomize);

/// Deterministic key for an edge under a given round seed. The salt is a
/// counter-based hash of (round_seed, edge_id), so every engine that knows the
/// original edge id reproduces the same key.
TieKey tie_key(EdgeId edge_id, double weight, std::uint64_t round_seed);

/// Uniform double in [0, 1) derived from a 64-bit hash value.
double unit_interval(std::uint64_t bits);

}  // namespace localmax
