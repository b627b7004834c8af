#pragma once

#include <cstddef>
#include <vector>

#include "localmax/matching.hpp"

namespace localmax {

struct RoundStats {
  std::size_t edges_before = 0;
  std::size_t edges_matched = 0;
  std::size_t edges_removed = 0;
  // distributed runs only: records exchanged across worker boundaries
  std::size_t candidate_messages = 0;
  std::size_t status_messages = 0;
  std::size_t message_bytes = 0;
  std::size_t cut_edges_before = 0;

  double removed_fraction() const {
    return edges_before == 0 ? 1.0 : static_cast<double>(edges_removed) / static_cast<double>(edges_before);
  }
};

/// Per-round bookkeeping of an iterative matcher. One-shot matchers (greedy,
/// GPA, HEM) report a single round covering all edges.
struct PhaseTrace {
  std::vector<RoundStats> rounds;
  double wall_millis = 0.0;

  std::size_t total_rounds() const { return rounds.size(); }
  double mean_removed_fraction() const;
  std::size_t total_removed() const;
  std::size_t total_messages() const;
  std::size_t total_message_bytes() const;
};

struct MatchResult {
  Matching matching;
  PhaseTrace trace;
};

}  // namespace localmax
