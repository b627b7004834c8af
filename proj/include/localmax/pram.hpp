#pragma once

// Array-level simulation of the CREW PRAM local max phase. Every simulated
// step is one whole-array pass; in checked mode each step logs its writes so
// that exclusive-write violations can be detected.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "localmax/graph.hpp"
#include "localmax/matchers.hpp"
#include "localmax/tie_key.hpp"
#include "localmax/trace.hpp"

namespace localmax {

class PramStructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PramArray : std::uint8_t {
  keys,
  scratch,
  cross,
  gather,
  scan,
  broadcast,
  matched,
  flags,
  edge_prefix,
  slot_prefix,
  new_edges,
  new_slots,
  segment_head,
  segment_prefix,
  new_offsets,
};

/// Per-step write record for the exclusive-write check.
class WriteLog {
 public:
  struct Conflict {
    std::string step;
    PramArray array;
    std::size_t index;
  };

  void begin_step(std::string name);
  void record(PramArray array, std::size_t index, std::size_t writer) {
    pending_.push_back({array, index, writer});
  }
  void end_step();

  std::size_t steps() const { return steps_; }
  std::size_t writes() const { return writes_; }
  const std::vector<Conflict>& conflicts() const { return conflicts_; }

 private:
  struct Write {
    PramArray array;
    std::size_t index;
    std::size_t writer;
  };
  std::string step_;
  std::vector<Write> pending_;
  std::vector<Conflict> conflicts_;
  std::size_t steps_ = 0;
  std::size_t writes_ = 0;
};

/// Adjacency arrays evolving across phases. Segments exist only for vertices
/// that still have edges, so a phase costs O(|A|) rather than O(n).
struct PramState {
  VertexId n = 0;
  std::vector<VertexId> segment_vertex;
  std::vector<std::size_t> V;  // segment offsets into A, size segments+1
  std::vector<Slot> A;
  std::vector<EdgeRecord> E;
  std::vector<EdgeId> original_id;  // graph edge id of E[k], stable across phases
  std::vector<std::size_t> scratch;  // per-edge cell used by pointer reversal
  std::vector<std::size_t> cross;    // partner slot of each slot
  std::vector<std::uint8_t> flags;   // per-edge deletion bit
  std::vector<TieKey> keys;

  static PramState from_graph(const Graph& g);

  std::size_t num_segments() const { return segment_vertex.size(); }
  AdjacencyView view() const { return {n, segment_vertex, V, A, E}; }
};

/// Element-visit counters. `live_elements` charges each phase once per live
/// slot, edge record and segment (plus n once for setup); `element_ops`
/// counts every array element touched by every simulated step.
struct PramWork {
  std::size_t live_elements = 0;
  std::size_t element_ops = 0;
};

/// Pointer reversal: each slot learns the index of its partner slot in four
/// exclusive-write steps (lower endpoint publishes, higher reads, then the
/// reverse). Throws PramStructureError unless every edge has exactly one slot
/// at each endpoint.
void compute_cross_pointers(PramState& s, WriteLog* log = nullptr, PramWork* work = nullptr);

/// Returns a description of the first broken invariant (layout or cross
/// pointer involution), or an empty string.
std::string check_pram_state(const PramState& s);

/// Inclusive segmented scan; segment i spans [offsets[i], offsets[i+1]).
template <class T, class Op>
std::vector<T> segmented_inclusive_scan(std::span<const T> values, std::span<const std::size_t> offsets,
                                        Op op) {
  std::vector<T> out(values.size());
  for (std::size_t s = 0; s + 1 < offsets.size(); ++s) {
    for (std::size_t i = offsets[s]; i < offsets[s + 1]; ++i) {
      out[i] = i == offsets[s] ? values[i] : op(out[i - 1], values[i]);
    }
  }
  return out;
}

/// Reduces a per-edge value over every vertex's incident slots and hands the
/// full segment result to each slot of that segment: gather, forward segmented
/// scan, then a backward pass copying each segment's last scan value.
template <class T, class Op>
std::vector<T> segmented_broadcast(const PramState& s, std::span<const T> per_edge, Op op,
                                   WriteLog* log = nullptr, PramWork* work = nullptr) {
  const std::size_t slots = s.A.size();
  std::vector<T> gathered(slots);
  if (log) log->begin_step("broadcast/gather");
  for (std::size_t i = 0; i < slots; ++i) {
    gathered[i] = per_edge[s.A[i].edge];
    if (log) log->record(PramArray::gather, i, i);
  }
  if (log) log->end_step();

  if (log) log->begin_step("broadcast/scan");
  auto scanned = segmented_inclusive_scan<T>(gathered, s.V, op);
  if (log) {
    for (std::size_t i = 0; i < slots; ++i) log->record(PramArray::scan, i, i);
    log->end_step();
  }

  if (log) log->begin_step("broadcast/spread");
  std::vector<T> out(slots);
  for (std::size_t seg = s.num_segments(); seg-- > 0;) {
    const std::size_t begin = s.V[seg];
    const std::size_t end = s.V[seg + 1];
    for (std::size_t i = end; i-- > begin;) {
      out[i] = i + 1 == end ? scanned[i] : out[i + 1];
      if (log) log->record(PramArray::broadcast, i, i);
    }
  }
  if (log) log->end_step();
  if (work) work->element_ops += 3 * slots + per_edge.size();
  return out;
}

/// New position of each surviving element after deleting flagged ones:
/// k - d_k with d the inclusive prefix sum of the flags. Deleted entries map
/// to the position they would have taken (unused).
std::vector<std::size_t> compaction_addresses(std::span<const std::uint8_t> deleted);

struct PhaseResult {
  std::vector<EdgeId> matched;  // original edge ids
  RoundStats stats;
};

/// One local max phase on the arrays: draw keys, find each vertex's heaviest
/// edge, match mutual choices, spread deletion flags, compact E and A, rebuild
/// V and the cross pointers.
PhaseResult pram_phase(PramState& s, std::uint64_t round_seed, WriteLog* log = nullptr,
                       PramWork* work = nullptr);

struct PramRun {
  MatchResult result;
  PramWork work;
  std::size_t simulated_steps = 0;
  std::size_t write_conflicts = 0;
  std::vector<std::string> invariant_failures;  // checked mode, one per bad phase
};

/// Runs phases until no edges are left. In checked mode every step's writes
/// are audited and the state is fully validated after each phase.
PramRun pram_local_max(const Graph& g, const LocalMaxOptions& opts = {}, bool checked = false);

}  // namespace localmax
