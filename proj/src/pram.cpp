#include "localmax/pram.hpp"

#include <algorithm>
#include <chrono>

namespace localmax {

void WriteLog::begin_step(std::string name) {
  step_ = std::move(name);
  pending_.clear();
}

void WriteLog::end_step() {
  ++steps_;
  writes_ += pending_.size();
  std::sort(pending_.begin(), pending_.end(), [](const Write& a, const Write& b) {
    return a.array != b.array ? a.array < b.array : a.index < b.index;
  });
  for (std::size_t i = 1; i < pending_.size(); ++i) {
    if (pending_[i].array == pending_[i - 1].array && pending_[i].index == pending_[i - 1].index) {
      conflicts_.push_back({step_, pending_[i].array, pending_[i].index});
    }
  }
  pending_.clear();
}

PramState PramState::from_graph(const Graph& g) {
  PramState s;
  s.n = g.num_vertices();
  s.A.assign(g.slots().begin(), g.slots().end());
  s.E.assign(g.edges().begin(), g.edges().end());
  s.original_id.resize(g.num_edges());
  for (EdgeId k = 0; k < g.num_edges(); ++k) s.original_id[k] = k;
  s.V.push_back(0);
  for (VertexId v = 0; v < s.n; ++v) {
    if (g.degree(v) == 0) continue;
    s.segment_vertex.push_back(v);
    s.V.push_back(g.offsets()[v + 1]);
  }
  s.scratch.assign(s.E.size(), 0);
  s.cross.assign(s.A.size(), 0);
  s.flags.assign(s.E.size(), 0);
  s.keys.assign(s.E.size(), TieKey::dummy());
  return s;
}

namespace {

// The slot's vertex is the smaller endpoint of its edge.
bool is_lower(const PramState& s, std::size_t i) {
  const EdgeRecord& e = s.E[s.A[i].edge];
  return s.A[i].vertex == std::min(e.u, e.v);
}

}  // namespace

void compute_cross_pointers(PramState& s, WriteLog* log, PramWork* work) {
  const std::size_t slots = s.A.size();
  {
    // structural precondition: one slot per endpoint for every edge
    std::vector<std::uint8_t> seen(s.E.size(), 0);
    for (std::size_t i = 0; i < slots; ++i) {
      const EdgeId k = s.A[i].edge;
      if (k >= s.E.size()) throw PramStructureError("slot " + std::to_string(i) + " points past E");
      const EdgeRecord& e = s.E[k];
      const std::uint8_t bit = s.A[i].vertex == e.u ? 1 : s.A[i].vertex == e.v ? 2 : 0;
      if (bit == 0 || (seen[k] & bit)) {
        throw PramStructureError("edge " + std::to_string(k) + " has an inconsistent slot " + std::to_string(i));
      }
      seen[k] |= bit;
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
      if (seen[k] != 3) throw PramStructureError("edge " + std::to_string(k) + " is not referenced exactly twice");
    }
  }
  s.scratch.assign(s.E.size(), 0);
  s.cross.assign(slots, 0);

  auto publish = [&](bool lower_writes, const char* name) {
    if (log) log->begin_step(name);
    for (std::size_t i = 0; i < slots; ++i) {
      if (is_lower(s, i) != lower_writes) continue;
      s.scratch[s.A[i].edge] = i;
      if (log) log->record(PramArray::scratch, s.A[i].edge, i);
    }
    if (log) log->end_step();
  };
  auto collect = [&](bool lower_reads, const char* name) {
    if (log) log->begin_step(name);
    for (std::size_t i = 0; i < slots; ++i) {
      if (is_lower(s, i) != lower_reads) continue;
      s.cross[i] = s.scratch[s.A[i].edge];
      if (log) log->record(PramArray::cross, i, i);
    }
    if (log) log->end_step();
  };
  publish(true, "cross/lower-publish");
  collect(false, "cross/higher-read");
  publish(false, "cross/higher-publish");
  collect(true, "cross/lower-read");
  if (work) work->element_ops += 4 * slots + s.E.size();
}

std::string check_pram_state(const PramState& s) {
  if (auto err = check_adjacency(s.view())) return *err;
  if (s.original_id.size() != s.E.size()) return "original id table has wrong length";
  if (s.cross.size() != s.A.size()) return "cross table has wrong length";
  for (std::size_t p = 0; p < s.A.size(); ++p) {
    const std::size_t q = s.cross[p];
    if (q >= s.A.size() || q == p) return "cross pointer of slot " + std::to_string(p) + " invalid";
    if (s.cross[q] != p) return "cross pointers not an involution at slot " + std::to_string(p);
    if (s.A[q].edge != s.A[p].edge || s.A[q].vertex == s.A[p].vertex) {
      return "cross partner of slot " + std::to_string(p) + " is not the other endpoint";
    }
  }
  return {};
}

std::vector<std::size_t> compaction_addresses(std::span<const std::uint8_t> deleted) {
  std::vector<std::size_t> out(deleted.size());
  std::size_t d = 0;
  for (std::size_t k = 0; k < deleted.size(); ++k) {
    d += deleted[k];
    out[k] = k - d;
  }
  return out;
}

PhaseResult pram_phase(PramState& s, std::uint64_t rseed, WriteLog* log, PramWork* work) {
  PhaseResult result;
  const std::size_t m = s.E.size();
  const std::size_t slots = s.A.size();
  result.stats.edges_before = m;
  if (work) work->live_elements += m + slots + s.num_segments();

  auto begin = [&](const char* name) {
    if (log) log->begin_step(name);
  };
  auto end = [&] {
    if (log) log->end_step();
  };
  auto wrote = [&](PramArray a, std::size_t index, std::size_t writer) {
    if (log) log->record(a, index, writer);
  };
  auto ops = [&](std::size_t count) {
    if (work) work->element_ops += count;
  };

  // 1: every edge draws its perturbed key
  begin("keys");
  for (std::size_t k = 0; k < m; ++k) {
    s.keys[k] = tie_key(s.original_id[k], s.E[k].w, rseed);
    wrote(PramArray::keys, k, k);
  }
  end();
  ops(m);

  // 2: heaviest incident edge per vertex, delivered to every slot
  const auto heaviest = segmented_broadcast<TieKey>(
      s, s.keys, [](const TieKey& a, const TieKey& b) { return std::max(a, b); }, log, work);

  // 3: the lower endpoint's slot matches e_k if it is heaviest at both ends
  std::vector<std::uint8_t> matched(m, 0);
  begin("match");
  for (std::size_t i = 0; i < slots; ++i) {
    if (!is_lower(s, i)) continue;
    const EdgeId k = s.A[i].edge;
    if (heaviest[i] == s.keys[k] && heaviest[s.cross[i]] == s.keys[k]) {
      matched[k] = 1;
      s.flags[k] = 1;
      wrote(PramArray::matched, k, i);
      wrote(PramArray::flags, k, i);
    }
  }
  end();
  ops(slots);

  begin("collect-matched");
  for (std::size_t k = 0; k < m; ++k) {
    if (matched[k]) result.matched.push_back(s.original_id[k]);
  }
  end();
  ops(m);
  result.stats.edges_matched = result.matched.size();

  // 4: spread deletion flags over all edges at a matched vertex; the lower
  // slot combines both endpoints' results so E[k] has a single writer
  const auto spread = segmented_broadcast<std::uint8_t>(
      s, s.flags, [](std::uint8_t a, std::uint8_t b) { return std::max(a, b); }, log, work);
  begin("flag");
  for (std::size_t i = 0; i < slots; ++i) {
    if (!is_lower(s, i)) continue;
    s.flags[s.A[i].edge] = std::max(spread[i], spread[s.cross[i]]);
    wrote(PramArray::flags, s.A[i].edge, i);
  }
  end();
  ops(slots);

  // 5: prefix sums over deleted edges (d_k) and deleted slots (r_i)
  begin("edge-prefix");
  const auto edge_addr = compaction_addresses(s.flags);
  for (std::size_t k = 0; k < m; ++k) wrote(PramArray::edge_prefix, k, k);
  end();
  std::vector<std::uint8_t> slot_deleted(slots);
  begin("slot-gather");
  for (std::size_t i = 0; i < slots; ++i) {
    slot_deleted[i] = s.flags[s.A[i].edge];
    wrote(PramArray::gather, i, i);
  }
  end();
  begin("slot-prefix");
  const auto slot_addr = compaction_addresses(slot_deleted);
  for (std::size_t i = 0; i < slots; ++i) wrote(PramArray::slot_prefix, i, i);
  end();
  ops(m + 2 * slots);

  // 6: survivors move to k - d_k and i - r_i; slots follow their edge
  std::size_t surviving_edges = 0;
  for (std::size_t k = 0; k < m; ++k) surviving_edges += s.flags[k] == 0;
  const std::size_t surviving_slots = 2 * surviving_edges;
  std::vector<EdgeRecord> new_e(surviving_edges);
  std::vector<EdgeId> new_orig(surviving_edges);
  std::vector<Slot> new_a(surviving_slots);
  begin("move-edges");
  for (std::size_t k = 0; k < m; ++k) {
    if (s.flags[k]) continue;
    new_e[edge_addr[k]] = s.E[k];
    new_orig[edge_addr[k]] = s.original_id[k];
    wrote(PramArray::new_edges, edge_addr[k], k);
  }
  end();
  begin("move-slots");
  for (std::size_t i = 0; i < slots; ++i) {
    if (slot_deleted[i]) continue;
    new_a[slot_addr[i]] = {s.A[i].vertex, static_cast<EdgeId>(edge_addr[s.A[i].edge])};
    wrote(PramArray::new_slots, slot_addr[i], i);
  }
  end();
  ops(m + slots);
  result.stats.edges_removed = m - surviving_edges;

  s.E = std::move(new_e);
  s.original_id = std::move(new_orig);
  s.A = std::move(new_a);
  s.flags.assign(surviving_edges, 0);
  s.keys.assign(surviving_edges, TieKey::dummy());

  // V: a slot heads a segment when its vertex differs from its predecessor's;
  // the prefix sum of head bits numbers the segments
  std::vector<std::uint8_t> head(surviving_slots);
  begin("segment-heads");
  for (std::size_t i = 0; i < surviving_slots; ++i) {
    head[i] = i == 0 || s.A[i - 1].vertex != s.A[i].vertex;
    wrote(PramArray::segment_head, i, i);
  }
  end();
  std::vector<std::size_t> seg_index(surviving_slots);
  begin("segment-prefix");
  std::size_t segments = 0;
  for (std::size_t i = 0; i < surviving_slots; ++i) {
    segments += head[i];
    seg_index[i] = segments - 1;
    wrote(PramArray::segment_prefix, i, i);
  }
  end();
  s.segment_vertex.assign(segments, 0);
  s.V.assign(segments + 1, surviving_slots);
  begin("segment-offsets");
  for (std::size_t i = 0; i < surviving_slots; ++i) {
    if (!head[i]) continue;
    s.segment_vertex[seg_index[i]] = s.A[i].vertex;
    s.V[seg_index[i]] = i;
    wrote(PramArray::new_offsets, seg_index[i], i);
  }
  end();
  ops(3 * surviving_slots);

  compute_cross_pointers(s, log, work);
  return result;
}

PramRun pram_local_max(const Graph& g, const LocalMaxOptions& opts, bool checked) {
  const auto start = std::chrono::steady_clock::now();
  PramRun run;
  run.result.matching = Matching(g.num_vertices());
  WriteLog log;
  WriteLog* logp = checked ? &log : nullptr;

  PramState s = PramState::from_graph(g);
  run.work.live_elements += g.num_vertices();
  run.work.element_ops += g.num_vertices() + g.slots().size() + g.num_edges();
  compute_cross_pointers(s, logp, &run.work);
  if (checked) {
    if (auto err = check_pram_state(s); !err.empty()) run.invariant_failures.push_back("setup: " + err);
  }

  for (std::uint32_t round = 1; !s.E.empty(); ++round) {
    auto phase = pram_phase(s, round_seed(opts.seed, round, opts.rerandomize), logp, &run.work);
    for (EdgeId e : phase.matched) run.result.matching.add(g, e);
    run.result.trace.rounds.push_back(phase.stats);
    if (checked) {
      if (auto err = check_pram_state(s); !err.empty()) {
        run.invariant_failures.push_back("phase " + std::to_string(round) + ": " + err);
      }
    }
  }
  run.result.matching.normalize();
  run.simulated_steps = log.steps();
  run.write_conflicts = log.conflicts().size();
  run.result.trace.wall_millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace localmax
