#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include <unistd.h>

#include "localmax/generators.hpp"
#include "localmax/io.hpp"
#include "test_util.hpp"

using namespace localmax;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("localmax_test_" + std::to_string(::getpid()) + "_" + name);
}

std::multiset<std::tuple<VertexId, VertexId, double>> edge_multiset(const Graph& g) {
  std::multiset<std::tuple<VertexId, VertexId, double>> out;
  for (const auto& e : g.edges()) out.insert({e.u, e.v, e.w});
  return out;
}

}  // namespace

TEST(GenRandom, EdgeCountAndWeightRange) {
  const Graph g = gen_random(1024, 4, 3);
  EXPECT_EQ(g.num_vertices(), 1024u);
  EXPECT_EQ(g.num_edges(), 4096u);
  for (const auto& e : g.edges()) {
    EXPECT_GE(e.w, 0.0);
    EXPECT_LT(e.w, 1.0);
  }
  EXPECT_FALSE(check_adjacency(view_of(g)).has_value());
}

TEST(GenRandom, UnitWeights) {
  const Graph g = gen_random(256, 16, 1, WeightMode::unit);
  EXPECT_EQ(g.num_edges(), 4096u);
  for (const auto& e : g.edges()) EXPECT_EQ(e.w, 1.0);
}

TEST(GenRandom, InfeasibleDensity) {
  EXPECT_THROW(gen_random(4, 2, 1), GraphError);  // 8 > 6 pairs
  EXPECT_NO_THROW(gen_random(5, 2, 1));           // 10 == 10 pairs
  EXPECT_THROW(gen_random(64, 4, 1, WeightMode::euclidean), GraphError);
}

TEST(GenRandom, Deterministic) {
  EXPECT_EQ(edge_multiset(gen_random(512, 4, 9)), edge_multiset(gen_random(512, 4, 9)));
  EXPECT_NE(edge_multiset(gen_random(512, 4, 9)), edge_multiset(gen_random(512, 4, 10)));
}

TEST(GenRgg, RadiusValue) { EXPECT_NEAR(rgg_radius(1024), 0.0451, 5e-4); }

TEST(GenRgg, MeanDegreeNearExpectation) {
  const double r = rgg_radius(1024);
  const double expected = 1024.0 * std::numbers::pi * r * r;
  EXPECT_NEAR(expected, 6.5, 0.1);
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_rgg(10, seed);
    const double mean = 2.0 * g.num_edges() / g.num_vertices();
    EXPECT_GE(mean, 4.0);
    EXPECT_LE(mean, 9.0);
    total += mean;
  }
  EXPECT_GE(total / 5, 4.0);
  EXPECT_LE(total / 5, 9.0);
}

TEST(GenRgg, StrictBoundary) {
  const std::vector<Point> pts{{0.25, 0.5}, {0.75, 0.5}, {0.25, 0.9}};
  // first pair at exactly 0.5, second pair at 0.4
  const Graph g = rgg_from_points(pts, 0.5, 1, WeightMode::euclidean);
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edge(0).u, 0u);
  EXPECT_EQ(g.edge(0).v, 2u);
  EXPECT_NEAR(g.edge(0).w, 0.4, 1e-12);
}

TEST(GenRgg, GridMatchesAllPairs) {
  for (unsigned x = 2; x <= 11; ++x) {
    for (std::uint64_t seed : {1u, 2u}) {
      for (WeightMode mode : {WeightMode::euclidean, WeightMode::random}) {
        const auto pts = rgg_points(x, seed);
        const auto n = static_cast<VertexId>(pts.size());
        ASSERT_EQ(n, VertexId{1} << x);
        const double r = rgg_radius(n);
        std::set<std::pair<VertexId, VertexId>> oracle;
        for (VertexId u = 0; u < n; ++u) {
          EXPECT_GE(pts[u].x, 0.0);
          EXPECT_LT(pts[u].x, 1.0);
          for (VertexId v = u + 1; v < n; ++v) {
            if (std::hypot(pts[u].x - pts[v].x, pts[u].y - pts[v].y) < r) oracle.insert({u, v});
          }
        }
        const Graph g = gen_rgg(x, seed, mode);
        std::set<std::pair<VertexId, VertexId>> got;
        for (const auto& e : g.edges()) {
          got.insert({e.u, e.v});
          const double want = mode == WeightMode::euclidean ? std::hypot(pts[e.u].x - pts[e.v].x, pts[e.u].y - pts[e.v].y)
                                                            : rgg_weight(pts, e.u, e.v, seed, mode);
          EXPECT_DOUBLE_EQ(e.w, want);
        }
        EXPECT_EQ(got, oracle) << "x=" << x << " seed=" << seed;
      }
    }
  }
}

TEST(GenRgg, RandomWeightsInRangeAndUnit) {
  const Graph r = gen_rgg(9, 4, WeightMode::random);
  for (const auto& e : r.edges()) {
    EXPECT_GE(e.w, 0.0);
    EXPECT_LT(e.w, 1.0);
  }
  const Graph u = gen_rgg(9, 4, WeightMode::unit);
  for (const auto& e : u.edges()) EXPECT_EQ(e.w, 1.0);
  EXPECT_THROW(gen_rgg(1, 4), GraphError);
}

TEST(Generate, DispatchesOnFamily) {
  const GeneratorSpec spec{Family::random, 8, 4, 5, WeightMode::unit};
  EXPECT_EQ(generate(spec).num_edges(), 1024u);
  EXPECT_EQ(spec.id(), "random8a4-unit");
  EXPECT_EQ(parse_family("rgg"), Family::rgg);
  EXPECT_EQ(parse_weight_mode("euclidean"), WeightMode::euclidean);
  EXPECT_THROW(parse_family("grid"), std::invalid_argument);
  EXPECT_THROW(parse_weight_mode("heavy"), std::invalid_argument);
}

TEST(MatrixMarket, NegativeOffDiagonalAndDiagonal) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "3 3 2\n"
      "2 1 -3.5\n"
      "3 3 7\n");
  const Graph g = parse_matrix_market(in);
  EXPECT_EQ(g.num_vertices(), 3u);
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edge(0), (EdgeRecord{0, 1, 3.5}));
}

TEST(MatrixMarket, PatternUnitWeights) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate pattern symmetric\n"
      "% comment\n"
      "4 4 3\n"
      "2 1\n3 2\n4 1\n");
  const Graph g = parse_matrix_market(in);
  ASSERT_EQ(g.num_edges(), 3u);
  for (const auto& e : g.edges()) EXPECT_EQ(e.w, 1.0);
}

TEST(MatrixMarket, IntegerAndZeroEntries) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate integer symmetric\n"
      "3 3 2\n"
      "2 1 -4\n"
      "3 1 0\n");
  const Graph g = parse_matrix_market(in);
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edge(0).w, 4.0);
}

TEST(MatrixMarket, Errors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_matrix_market(in);
  };
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate real symmetric\n4 4 1\n1 5 1.0\n"), IoError);
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n2 1 1.0\n"), IoError);
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate real symmetric\n3 4 1\n2 1 1.0\n"), IoError);
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n2 1 1.0\n"), IoError);
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate real symmetric\n3 3 1\n2 x 1.0\n"), IoError);
  EXPECT_THROW(parse(""), IoError);
  EXPECT_THROW(read_matrix_market("/nonexistent/file.mtx"), IoError);
}

TEST(MatrixMarket, FixtureFile) {
  const Graph g = read_graph(fs::path(LOCALMAX_TEST_DATA_DIR) / "fixture5x5.mtx");
  EXPECT_EQ(g.num_vertices(), 5u);
  const std::vector<EdgeRecord> want{{0, 1, 3.5}, {0, 2, 2.0}, {1, 3, 1.25}, {2, 3, 7.0}, {3, 4, 0.5}, {0, 4, 3.0}};
  EXPECT_EQ(std::vector<EdgeRecord>(g.edges().begin(), g.edges().end()), want);
}

TEST(MatrixMarket, RoundTrip) {
  const Graph g = gen_rgg(8, 3);
  std::stringstream ss;
  write_matrix_market(g, ss);
  const Graph h = parse_matrix_market(ss);
  EXPECT_EQ(h.num_vertices(), g.num_vertices());
  EXPECT_EQ(edge_multiset(h), edge_multiset(g));
}

TEST(EdgeList, SingleLine) {
  std::istringstream in("0 1 2.5\n");
  const Graph g = parse_edge_list(in);
  EXPECT_EQ(g.num_vertices(), 2u);
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edge(0).w, 2.5);
}

TEST(EdgeList, EmptyAndHeader) {
  std::istringstream empty("");
  EXPECT_EQ(parse_edge_list(empty).num_vertices(), 0u);
  std::istringstream header("# n=7\n");
  EXPECT_EQ(parse_edge_list(header).num_vertices(), 7u);
  std::istringstream overridden("0 1 1\n");
  EXPECT_EQ(parse_edge_list(overridden, 10).num_vertices(), 10u);
}

TEST(EdgeList, Errors) {
  std::istringstream bad_weight("0 1 -2\n");
  EXPECT_THROW(parse_edge_list(bad_weight), IoError);
  std::istringstream garbage("0 one 2\n");
  EXPECT_THROW(parse_edge_list(garbage), IoError);
  std::istringstream too_small("0 5 1\n");
  EXPECT_THROW(parse_edge_list(too_small, 3), IoError);
}

TEST(EdgeList, RoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graph g = testutil::random_graph(seed);
    std::stringstream ss;
    write_edge_list(g, ss);
    const Graph h = parse_edge_list(ss);
    ASSERT_EQ(h.num_vertices(), g.num_vertices()) << "seed " << seed;
    EXPECT_EQ(edge_multiset(h), edge_multiset(g)) << "seed " << seed;
  }
}

TEST(EdgeList, FileDispatch) {
  const auto path = temp_path("graph.txt");
  const Graph g = gen_random(64, 4, 2);
  write_edge_list(g, path);
  EXPECT_EQ(edge_multiset(read_graph(path)), edge_multiset(g));
  fs::remove(path);
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 12345.678, 1e-300}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Csv, WriteReadAppend) {
  const auto path = temp_path("table.csv");
  fs::remove(path);
  CsvTable t{{"a", "b"}, {{"1", "x"}, {"2", "y"}}};
  write_csv(t, path, false, {"schema=1"});
  write_csv(CsvTable{{"a", "b"}, {{"3", "z"}}}, path, true, {"schema=1"});
  const auto back = read_csv(path);
  EXPECT_EQ(back.header, t.header);
  ASSERT_EQ(back.rows.size(), 3u);
  EXPECT_EQ(back.rows[2], (std::vector<std::string>{"3", "z"}));

  EXPECT_THROW(write_csv(CsvTable{{"a", "c"}, {}}, path, true, {"schema=1"}), IoError);
  EXPECT_THROW(write_csv(CsvTable{{"a", "b"}, {}}, path, true, {"schema=2"}), IoError);
  fs::remove(path);

  // appending to a missing file writes the header
  write_csv(t, path, true, {"schema=1"});
  EXPECT_EQ(read_csv(path).rows.size(), 2u);
  fs::remove(path);
}
