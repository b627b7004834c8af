#include "localmax/bsp.hpp"

#include <algorithm>
#include <barrier>
#include <chrono>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_map>

namespace localmax {

std::uint32_t Partition::owner(VertexId v) const {
  auto it = std::upper_bound(range_begin.begin(), range_begin.end(), v);
  return static_cast<std::uint32_t>(it - range_begin.begin() - 1);
}

double Partition::max_imbalance() const {
  std::size_t total = 0;
  std::size_t worst = 0;
  for (std::size_t d : degree_sum) {
    total += d;
    worst = std::max(worst, d);
  }
  if (total == 0) return 1.0;
  return static_cast<double>(worst) * static_cast<double>(p) / static_cast<double>(total);
}

Partition partition_graph(const Graph& g, std::uint32_t p) {
  const VertexId n = g.num_vertices();
  if (p == 0) throw GraphError("worker count must be positive");
  if (p > n) throw GraphError("more workers (" + std::to_string(p) + ") than vertices (" + std::to_string(n) + ")");

  Partition part;
  part.p = p;
  part.range_begin.assign(p + 1, 0);
  part.range_begin[p] = n;
  const auto offsets = g.offsets();
  const std::size_t total = offsets[n];
  for (std::uint32_t k = 1; k < p; ++k) {
    VertexId cut;
    if (total == 0) {
      cut = static_cast<VertexId>(std::uint64_t{n} * k / p);
    } else {
      const double target = static_cast<double>(total) * k / p;
      auto it = std::lower_bound(offsets.begin(), offsets.end(), target,
                                 [](std::size_t a, double t) { return static_cast<double>(a) < t; });
      cut = static_cast<VertexId>(it - offsets.begin());
      if (cut > 0 && target - static_cast<double>(offsets[cut - 1]) < static_cast<double>(offsets[cut]) - target) {
        --cut;
      }
    }
    // keep every range non-empty
    cut = std::max<VertexId>(cut, part.range_begin[k - 1] + 1);
    cut = std::min<VertexId>(cut, n - (p - k));
    part.range_begin[k] = cut;
  }

  part.local_edges.assign(p, {});
  part.degree_sum.assign(p, 0);
  for (std::uint32_t w = 0; w < p; ++w) {
    part.degree_sum[w] = offsets[part.range_begin[w + 1]] - offsets[part.range_begin[w]];
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& rec = g.edge(e);
    const std::uint32_t a = part.owner(rec.u);
    const std::uint32_t b = part.owner(rec.v);
    part.local_edges[a].push_back(e);
    if (b != a) {
      part.local_edges[b].push_back(e);
      ++part.cut_edges;
    }
  }
  return part;
}

namespace {

constexpr std::uint32_t kLocal = std::numeric_limits<std::uint32_t>::max();

struct LocalEdge {
  EdgeId id;
  double w;
  std::uint32_t lu;  // local index of the owned endpoint (or lower, if both owned)
  std::uint32_t lv;
  std::uint32_t subscription;  // kLocal for internal edges
  bool lower_owned;            // this worker records the edge in global counts
};

// An owned vertex mirrored as a ghost on another worker.
struct Subscription {
  std::uint32_t owned_local;
  std::uint32_t worker;
  std::uint32_t remote_local;
  std::uint32_t candidate_stamp = 0;
  std::uint32_t status_stamp = 0;
};

struct CandidateRecord {
  std::uint32_t local;
  TieKey key;
};

struct Worker {
  std::uint32_t id = 0;
  std::vector<VertexId> global;  // local index -> global id; owned first
  std::vector<LocalEdge> live;
  std::vector<Subscription> subs;
  std::vector<TieKey> cand;
  std::vector<std::uint8_t> matched;
  std::vector<std::uint32_t> matched_partner_owner;
  std::vector<EdgeId> matching;  // edges whose lower endpoint this worker owns
  std::vector<RoundStats> rounds;
  std::size_t live_lower = 0;  // live edges counted by this worker
};

void build_workers(const Graph& g, const Partition& part, std::vector<Worker>& workers) {
  const std::uint32_t p = part.p;
  workers.resize(p);
  std::vector<std::unordered_map<VertexId, std::uint32_t>> ghost_index(p);

  auto local_of = [&](std::uint32_t w, VertexId v) -> std::uint32_t {
    Worker& wk = workers[w];
    const VertexId lo = part.range_begin[w];
    if (v >= lo && v < part.range_begin[w + 1]) return v - lo;
    auto [it, inserted] = ghost_index[w].try_emplace(v, static_cast<std::uint32_t>(wk.global.size()));
    if (inserted) wk.global.push_back(v);
    return it->second;
  };

  for (std::uint32_t w = 0; w < p; ++w) {
    Worker& wk = workers[w];
    wk.id = w;
    for (VertexId v = part.range_begin[w]; v < part.range_begin[w + 1]; ++v) wk.global.push_back(v);
  }
  // subscriptions keyed by (owned vertex, other worker)
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> sub_index(p);
  for (std::uint32_t w = 0; w < p; ++w) {
    Worker& wk = workers[w];
    for (EdgeId e : part.local_edges[w]) {
      const auto& rec = g.edge(e);
      const std::uint32_t ou = part.owner(rec.u);
      const std::uint32_t ov = part.owner(rec.v);
      LocalEdge le{e, rec.w, 0, 0, kLocal, ou == w};
      if (ou == w && ov == w) {
        le.lu = local_of(w, rec.u);
        le.lv = local_of(w, rec.v);
      } else {
        const VertexId mine = ou == w ? rec.u : rec.v;
        const VertexId ghost = ou == w ? rec.v : rec.u;
        const std::uint32_t other = ou == w ? ov : ou;
        le.lu = local_of(w, mine);
        le.lv = local_of(w, ghost);
        const std::uint64_t key = (std::uint64_t{mine} << 32) | other;
        auto [it, inserted] = sub_index[w].try_emplace(key, static_cast<std::uint32_t>(wk.subs.size()));
        if (inserted) wk.subs.push_back({le.lu, other, 0});
        le.subscription = it->second;
      }
      wk.live.push_back(le);
    }
  }
  // ghost indices exist on all workers now; resolve remote locals
  for (std::uint32_t w = 0; w < p; ++w) {
    for (auto& s : workers[w].subs) {
      s.remote_local = ghost_index[s.worker].at(workers[w].global[s.owned_local]);
    }
  }
  for (auto& wk : workers) {
    wk.cand.assign(wk.global.size(), TieKey::dummy());
    wk.matched.assign(wk.global.size(), 0);
    wk.matched_partner_owner.assign(wk.global.size(), kLocal);
    wk.live_lower = static_cast<std::size_t>(
        std::count_if(wk.live.begin(), wk.live.end(), [](const LocalEdge& e) { return e.lower_owned; }));
  }
}

}  // namespace

MatchResult bsp_local_max(const Graph& g, std::uint32_t p, const LocalMaxOptions& opts) {
  if (g.empty()) return {Matching(g.num_vertices()), {}};
  return bsp_local_max(g, partition_graph(g, std::max<std::uint32_t>(1, std::min(p, g.num_vertices()))), opts);
}

MatchResult bsp_local_max(const Graph& g, const Partition& part, const LocalMaxOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  MatchResult result{Matching(g.num_vertices()), {}};
  if (g.empty()) return result;

  const std::uint32_t p = part.p;
  std::vector<Worker> workers;
  build_workers(g, part, workers);

  // mailboxes[from][to]; a sender clears its own row only after the barrier
  // that follows the receivers' reads
  std::vector<std::vector<std::vector<CandidateRecord>>> cand_box(p, std::vector<std::vector<CandidateRecord>>(p));
  std::vector<std::vector<std::vector<std::uint32_t>>> status_box(p, std::vector<std::vector<std::uint32_t>>(p));

  bool done = false;
  auto tally = [&]() noexcept {
    std::size_t live = 0;
    for (const auto& wk : workers) live += wk.live_lower;
    done = live == 0;
  };
  std::barrier sync(static_cast<std::ptrdiff_t>(p), tally);

  auto run_worker = [&](Worker& wk) {
    const std::uint32_t me = wk.id;
    for (std::uint32_t round = 1;; ++round) {
      const std::uint64_t rseed = round_seed(opts.seed, round, opts.rerandomize);
      RoundStats stats;
      for (auto& box : cand_box[me]) box.clear();

      // pass 1: local candidates, then publish those of boundary vertices
      for (const LocalEdge& e : wk.live) {
        const TieKey key = tie_key(e.id, e.w, rseed);
        wk.cand[e.lu] = std::max(wk.cand[e.lu], key);
        wk.cand[e.lv] = std::max(wk.cand[e.lv], key);
        if (e.lower_owned) {
          ++stats.edges_before;
          if (e.subscription != kLocal) ++stats.cut_edges_before;
        }
      }
      for (const LocalEdge& e : wk.live) {
        if (e.subscription == kLocal) continue;
        Subscription& s = wk.subs[e.subscription];
        if (s.candidate_stamp == round) continue;
        s.candidate_stamp = round;
        cand_box[me][s.worker].push_back({s.remote_local, wk.cand[s.owned_local]});
        ++stats.candidate_messages;
      }
      sync.arrive_and_wait();
      if (done) break;
      // receivers finished reading last round's status records before this barrier
      for (auto& box : status_box[me]) box.clear();

      for (std::uint32_t from = 0; from < p; ++from) {
        for (const auto& rec : cand_box[from][me]) wk.cand[rec.local] = std::max(wk.cand[rec.local], rec.key);
      }
      // pass 2: mutual candidates are matched
      for (const LocalEdge& e : wk.live) {
        if (wk.cand[e.lu].edge_id != e.id || wk.cand[e.lv].edge_id != e.id) continue;
        wk.matched[e.lu] = wk.matched[e.lv] = 1;
        if (e.subscription != kLocal) {
          wk.matched_partner_owner[e.lu] = wk.subs[e.subscription].worker;
        }
        if (e.lower_owned) {
          wk.matching.push_back(e.id);
          ++stats.edges_matched;
        }
      }
      // tell neighbours about matched boundary vertices they cannot infer
      for (const LocalEdge& e : wk.live) {
        if (e.subscription == kLocal || !wk.matched[e.lu]) continue;
        Subscription& s = wk.subs[e.subscription];
        if (s.status_stamp == round) continue;
        s.status_stamp = round;
        if (wk.matched_partner_owner[e.lu] == s.worker) continue;
        status_box[me][s.worker].push_back(s.remote_local);
        ++stats.status_messages;
      }
      sync.arrive_and_wait();

      for (std::uint32_t from = 0; from < p; ++from) {
        for (std::uint32_t local : status_box[from][me]) wk.matched[local] = 1;
      }
      // pass 3: removal and candidate reset
      std::size_t kept = 0;
      for (const LocalEdge& e : wk.live) {
        if (wk.matched[e.lu] || wk.matched[e.lv]) {
          if (e.lower_owned) {
            ++stats.edges_removed;
            --wk.live_lower;
          }
          continue;
        }
        wk.cand[e.lu] = TieKey::dummy();
        wk.cand[e.lv] = TieKey::dummy();
        wk.live[kept++] = e;
      }
      wk.live.resize(kept);
      stats.message_bytes = stats.candidate_messages * kCandidateRecordBytes +
                            stats.status_messages * kStatusRecordBytes;
      wk.rounds.push_back(stats);
    }
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(p);
    for (std::uint32_t w = 0; w < p; ++w) threads.emplace_back(run_worker, std::ref(workers[w]));
  }

  const std::size_t rounds = workers.front().rounds.size();
  result.trace.rounds.assign(rounds, {});
  for (const auto& wk : workers) {
    for (std::size_t r = 0; r < rounds; ++r) {
      RoundStats& dst = result.trace.rounds[r];
      const RoundStats& src = wk.rounds[r];
      dst.edges_before += src.edges_before;
      dst.edges_matched += src.edges_matched;
      dst.edges_removed += src.edges_removed;
      dst.candidate_messages += src.candidate_messages;
      dst.status_messages += src.status_messages;
      dst.message_bytes += src.message_bytes;
      dst.cut_edges_before += src.cut_edges_before;
    }
    for (EdgeId e : wk.matching) result.matching.add(g, e);
  }
  result.matching.normalize();
  result.trace.wall_millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace localmax
