#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "localmax/graph.hpp"

namespace localmax {

enum class WeightMode { unit, random, euclidean };
enum class Family { random, rgg };

WeightMode parse_weight_mode(std::string_view s);
Family parse_family(std::string_view s);
std::string_view to_string(WeightMode m);
std::string_view to_string(Family f);

/// Synthetic instance description: n = 2^x vertices; alpha only matters for
/// the random family (m = alpha * n).
struct GeneratorSpec {
  Family family = Family::rgg;
  unsigned x = 10;
  unsigned alpha = 4;
  std::uint64_t seed = 0;
  WeightMode weights = WeightMode::random;

  std::string id() const;
};

/// Uniform random simple graph with exactly alpha*n edges, sampled without
/// replacement. Weights are uniform in [0,1) (or 1.0 in unit mode).
/// Throws GraphError if alpha*n exceeds n(n-1)/2 or on euclidean weights.
Graph gen_random(VertexId n, unsigned alpha, std::uint64_t seed,
                 WeightMode weights = WeightMode::random);

struct Point {
  double x;
  double y;
};

/// Connection radius 0.55 * sqrt(ln n / n).
double rgg_radius(VertexId n);

/// The 2^x points of an rgg instance, numbered in row-major grid-cell order so
/// that consecutive vertex ids are spatially close.
std::vector<Point> rgg_points(unsigned x, std::uint64_t seed);

/// Edge weight of {u, v} in an rgg instance. Random weights are a hash of
/// (seed, u, v), independent of enumeration order.
double rgg_weight(const std::vector<Point>& pts, VertexId u, VertexId v, std::uint64_t seed,
                  WeightMode mode);

/// Geometric graph over arbitrary points in [0,1)^2: edge iff distance < radius.
Graph rgg_from_points(const std::vector<Point>& pts, double radius, std::uint64_t seed,
                      WeightMode weights);

/// Random geometric graph: edge iff distance < rgg_radius(n) (strict).
/// Neighbour search uses a uniform grid with cell width >= radius.
Graph gen_rgg(unsigned x, std::uint64_t seed, WeightMode weights = WeightMode::euclidean);

Graph generate(const GeneratorSpec& spec);

}  // namespace localmax
