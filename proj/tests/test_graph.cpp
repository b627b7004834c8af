#include <gtest/gtest.h>

#include <map>

#include "localmax/graph.hpp"
#include "localmax/matching.hpp"
#include "localmax/tie_key.hpp"
#include "test_util.hpp"

using namespace localmax;
using testutil::make;

TEST(BuildGraph, SingleEdgeLayout) {
  const Graph g = make(2, {{0, 1, 1.0}});
  EXPECT_EQ(std::vector<std::size_t>(g.offsets().begin(), g.offsets().end()), (std::vector<std::size_t>{0, 1, 2}));
  ASSERT_EQ(g.slots().size(), 2u);
  EXPECT_EQ(g.slots()[0], (Slot{0, 0}));
  EXPECT_EQ(g.slots()[1], (Slot{1, 0}));
  EXPECT_EQ(g.edge(0), (EdgeRecord{0, 1, 1.0}));
}

TEST(BuildGraph, TriangleOffsets) {
  const Graph g = testutil::triangle_123();
  EXPECT_EQ(std::vector<std::size_t>(g.offsets().begin(), g.offsets().end()),
            (std::vector<std::size_t>{0, 2, 4, 6}));
  std::vector<int> refs(3, 0);
  for (const auto& s : g.slots()) ++refs[s.edge];
  EXPECT_EQ(refs, (std::vector<int>{2, 2, 2}));
  EXPECT_FALSE(check_adjacency(view_of(g)).has_value());
}

TEST(BuildGraph, SelfLoopDropped) {
  const Graph g = make(4, {{0, 1, 1.0}, {3, 3, 5.0}, {1, 2, 1.0}});
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edge(1), (EdgeRecord{1, 2, 1.0}));
}

TEST(BuildGraph, ParallelEdgesKeepHeaviest) {
  const Graph g = make(3, {{1, 0, 2.0}, {0, 1, 5.0}, {1, 2, 1.0}, {0, 1, 5.0}});
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edge(0), (EdgeRecord{0, 1, 5.0}));
  EXPECT_EQ(g.edge(1), (EdgeRecord{1, 2, 1.0}));
}

TEST(BuildGraph, EndpointsNormalized) {
  const Graph g = make(5, {{4, 2, 1.5}});
  EXPECT_EQ(g.edge(0).u, 2u);
  EXPECT_EQ(g.edge(0).v, 4u);
  EXPECT_EQ(g.edge(0).other(2), 4u);
}

TEST(BuildGraph, RejectsBadInput) {
  EXPECT_THROW(make(2, {{0, 2, 1.0}}), GraphError);
  EXPECT_THROW(make(2, {{0, 1, -1.0}}), GraphError);
  EXPECT_THROW(make(2, {{0, 1, std::nan("")}}), GraphError);
  EXPECT_THROW(make(2, {{0, 1, std::numeric_limits<double>::infinity()}}), GraphError);
}

TEST(BuildGraph, EmptyGraph) {
  const Graph g;
  EXPECT_EQ(g.num_vertices(), 0u);
  EXPECT_TRUE(g.empty());
  EXPECT_FALSE(check_adjacency(view_of(g)).has_value());
  const Graph h = make(5, {});
  EXPECT_EQ(h.num_vertices(), 5u);
  EXPECT_EQ(h.degree(3), 0u);
}

TEST(CheckAdjacency, DetectsCorruption) {
  const Graph g = testutil::triangle_123();
  std::vector<Slot> slots(g.slots().begin(), g.slots().end());
  auto view = view_of(g);

  auto swapped = slots;
  std::swap(swapped[0], swapped[2]);  // slot now owned by the wrong vertex
  view.slots = swapped;
  EXPECT_TRUE(check_adjacency(view).has_value());

  auto doubled = slots;
  doubled[1].edge = doubled[0].edge;  // vertex 0 references one edge twice
  view.slots = doubled;
  EXPECT_TRUE(check_adjacency(view).has_value());

  std::vector<std::size_t> offsets(g.offsets().begin(), g.offsets().end());
  offsets.pop_back();
  view = view_of(g);
  view.offsets = offsets;
  EXPECT_TRUE(check_adjacency(view).has_value());
}

TEST(CheckAdjacency, SubsetSegments) {
  // vertex 1 has no segment; segments belong to vertices 0 and 2
  const std::vector<VertexId> seg{0, 2};
  const std::vector<std::size_t> offsets{0, 1, 2};
  const std::vector<Slot> slots{{0, 0}, {2, 0}};
  const std::vector<EdgeRecord> edges{{0, 2, 1.0}};
  AdjacencyView view{3, seg, offsets, slots, edges};
  EXPECT_FALSE(check_adjacency(view).has_value());
  const std::vector<VertexId> bad{2, 0};
  view.segment_vertex = bad;
  EXPECT_TRUE(check_adjacency(view).has_value());
}

TEST(BuildGraph, PropertyMatchesDedupOracle) {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    auto [n, input] = testutil::random_input(seed);
    const Graph g = build_graph(n, input);
    ASSERT_FALSE(check_adjacency(view_of(g)).has_value()) << "seed " << seed;

    // oracle: heaviest weight per unordered pair, first occurrence order
    std::map<std::pair<VertexId, VertexId>, double> best;
    std::vector<std::pair<VertexId, VertexId>> order;
    for (const auto& e : input) {
      if (e.u == e.v) continue;
      const auto key = std::minmax(e.u, e.v);
      auto [it, inserted] = best.try_emplace(key, e.w);
      if (inserted) {
        order.push_back(key);
      } else {
        it->second = std::max(it->second, e.w);
      }
    }
    ASSERT_EQ(g.num_edges(), order.size()) << "seed " << seed;
    std::size_t degree_total = 0;
    for (VertexId v = 0; v < n; ++v) degree_total += g.degree(v);
    EXPECT_EQ(degree_total, 2 * order.size());
    for (EdgeId k = 0; k < g.num_edges(); ++k) {
      EXPECT_EQ(g.edge(k).u, order[k].first);
      EXPECT_EQ(g.edge(k).v, order[k].second);
      EXPECT_EQ(g.edge(k).w, best[order[k]]);
    }
    for (VertexId v = 0; v < n; ++v) {
      const auto inc = g.incident(v);
      for (std::size_t i = 1; i < inc.size(); ++i) EXPECT_LT(inc[i - 1].edge, inc[i].edge);
    }
  }
}

TEST(TieKey, EqualWeightsDiffer) {
  const auto rs = round_seed(42, 1, true);
  EXPECT_NE(tie_key(5, 1.0, rs), tie_key(9, 1.0, rs));
}

TEST(TieKey, RerandomizeChangesSalt) {
  const auto a = tie_key(3, 1.0, round_seed(7, 1, true));
  const auto b = tie_key(3, 1.0, round_seed(7, 2, true));
  EXPECT_NE(a.salt, b.salt);
}

TEST(TieKey, NoRerandomizeKeepsKey) {
  const auto a = tie_key(3, 1.0, round_seed(7, 1, false));
  const auto b = tie_key(3, 1.0, round_seed(7, 2, false));
  EXPECT_EQ(a, b);
}

TEST(TieKey, WeightDominatesAndDummyLowest) {
  const auto rs = round_seed(1, 1, true);
  EXPECT_LT(tie_key(0, 1.0, rs), tie_key(1, 2.0, rs));
  EXPECT_LT(TieKey::dummy(), tie_key(0, 0.0, rs));
  EXPECT_TRUE(TieKey::dummy().is_dummy());
}

TEST(TieKey, TotalOrderProperty) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto rs = round_seed(seed, 1 + seed % 5, true);
    std::vector<TieKey> keys;
    for (EdgeId e = 0; e < 30; ++e) keys.push_back(tie_key(e, static_cast<double>(e % 3), rs));
    for (std::size_t i = 0; i < keys.size(); ++i) {
      for (std::size_t j = 0; j < keys.size(); ++j) {
        if (i == j) continue;
        EXPECT_NE(keys[i] <=> keys[j], std::strong_ordering::equal);
        EXPECT_EQ(keys[i] < keys[j], keys[j] > keys[i]);
      }
    }
  }
}

TEST(TieKey, UnitIntervalRange) {
  EXPECT_EQ(unit_interval(0), 0.0);
  EXPECT_LT(unit_interval(~std::uint64_t{0}), 1.0);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = unit_interval(mix64(i));
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Matching, TriangleValidMaximal) {
  const Graph g = testutil::triangle_123();
  const auto m = Matching::from_edges(g, {testutil::find_edge(g, 0, 2)});
  const auto c = validate_matching(g, m);
  EXPECT_TRUE(c.valid);
  EXPECT_TRUE(c.maximal);
  EXPECT_DOUBLE_EQ(m.weight(g), 3.0);
}

TEST(Matching, PathNotMaximal) {
  const Graph g = testutil::path_232();
  const auto c = validate_matching(g, Matching::from_edges(g, {0}));
  EXPECT_TRUE(c.valid);
  EXPECT_FALSE(c.maximal);
}

TEST(Matching, SharedEndpointInvalid) {
  const Graph g = testutil::path_232();
  EXPECT_FALSE(validate_matching(g, Matching::from_edges(g, {0, 1})).valid);
}

TEST(Matching, MalformedInputInvalid) {
  const Graph g = testutil::path_232();
  EXPECT_FALSE(validate_matching(g, Matching::from_edges(g, {7})).valid);
  EXPECT_FALSE(validate_matching(g, Matching(2)).valid);
  EXPECT_FALSE(validate_matching(g, Matching::from_edges(g, {0, 0})).valid);
}

TEST(Matching, ValidatorAgreesWithNaiveProperty) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Graph g = testutil::random_graph(seed, 12, 30);
    std::mt19937_64 rng(seed);
    std::vector<EdgeId> pick;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (rng() % 4 == 0) pick.push_back(e);
    }
    const auto c = validate_matching(g, Matching::from_edges(g, pick));
    const bool valid = testutil::naive_valid(g, pick);
    EXPECT_EQ(c.valid, valid) << "seed " << seed;
    if (valid) EXPECT_EQ(c.maximal, testutil::naive_maximal(g, pick)) << "seed " << seed;
  }
}
