#include "localmax/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "localmax/tie_key.hpp"

namespace localmax {

WeightMode parse_weight_mode(std::string_view s) {
  if (s == "unit") return WeightMode::unit;
  if (s == "random") return WeightMode::random;
  if (s == "euclidean") return WeightMode::euclidean;
  throw std::invalid_argument("unknown weight mode '" + std::string(s) + "'");
}

Family parse_family(std::string_view s) {
  if (s == "random") return Family::random;
  if (s == "rgg") return Family::rgg;
  throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

std::string_view to_string(WeightMode m) {
  switch (m) {
    case WeightMode::unit: return "unit";
    case WeightMode::random: return "random";
    case WeightMode::euclidean: return "euclidean";
  }
  return "?";
}

std::string_view to_string(Family f) { return f == Family::random ? "random" : "rgg"; }

std::string GeneratorSpec::id() const {
  std::string s = family == Family::rgg ? "rgg" + std::to_string(x)
                                        : "random" + std::to_string(x) + "a" + std::to_string(alpha);
  return s + "-" + std::string(to_string(weights));
}

Graph gen_random(VertexId n, unsigned alpha, std::uint64_t seed, WeightMode weights) {
  if (weights == WeightMode::euclidean) throw GraphError("random family has no euclidean weights");
  const std::uint64_t m = std::uint64_t{alpha} * n;
  const std::uint64_t capacity = std::uint64_t{n} * (n > 0 ? n - 1 : 0) / 2;
  if (m > capacity) {
    throw GraphError("density infeasible: " + std::to_string(m) + " edges requested, only " +
                     std::to_string(capacity) + " vertex pairs");
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, n > 0 ? n - 1 : 0);

  std::unordered_set<std::uint64_t> taken;
  taken.reserve(m);
  std::vector<InputEdge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    VertexId u = pick(rng);
    VertexId v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!taken.insert((std::uint64_t{u} << 32) | v).second) continue;
    edges.push_back({u, v, weights == WeightMode::unit ? 1.0 : unit_interval(rng())});
  }
  return build_graph(n, edges);
}

double rgg_radius(VertexId n) {
  const double nn = static_cast<double>(n);
  return 0.55 * std::sqrt(std::log(nn) / nn);
}

namespace {

std::size_t cells_per_side(double radius) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(1.0 / radius)));
}

std::size_t cell_coord(double c, std::size_t cells) {
  return std::min(cells - 1, static_cast<std::size_t>(c * static_cast<double>(cells)));
}

}  // namespace

std::vector<Point> rgg_points(unsigned x, std::uint64_t seed) {
  if (x < 2 || x > 30) throw GraphError("rgg requires 2 <= x <= 30");
  const VertexId n = VertexId{1} << x;
  std::mt19937_64 rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = unit_interval(rng());
    p.y = unit_interval(rng());
  }
  const std::size_t cells = cells_per_side(rgg_radius(n));
  auto cell_of = [&](const Point& p) { return cell_coord(p.y, cells) * cells + cell_coord(p.x, cells); };
  std::stable_sort(pts.begin(), pts.end(),
                   [&](const Point& a, const Point& b) { return cell_of(a) < cell_of(b); });
  return pts;
}

double rgg_weight(const std::vector<Point>& pts, VertexId u, VertexId v, std::uint64_t seed,
                  WeightMode mode) {
  switch (mode) {
    case WeightMode::unit: return 1.0;
    case WeightMode::euclidean: return std::hypot(pts[u].x - pts[v].x, pts[u].y - pts[v].y);
    case WeightMode::random: {
      const VertexId a = std::min(u, v);
      const VertexId b = std::max(u, v);
      return unit_interval(mix64(mix64(seed ^ 0x5bd1e995ULL) ^ ((std::uint64_t{a} << 32) | b)));
    }
  }
  return 0.0;
}

Graph rgg_from_points(const std::vector<Point>& pts, double radius, std::uint64_t seed,
                      WeightMode weights) {
  const auto n = static_cast<VertexId>(pts.size());
  const std::size_t cells = cells_per_side(radius);
  auto cell_of = [&](const Point& p) { return cell_coord(p.y, cells) * cells + cell_coord(p.x, cells); };

  // counting sort of vertex ids into grid cells
  std::vector<std::size_t> cell_start(cells * cells + 1, 0);
  for (const auto& p : pts) ++cell_start[cell_of(p) + 1];
  std::partial_sum(cell_start.begin(), cell_start.end(), cell_start.begin());
  std::vector<VertexId> bucket(n);
  {
    std::vector<std::size_t> fill(cell_start.begin(), cell_start.end() - 1);
    for (VertexId u = 0; u < n; ++u) bucket[fill[cell_of(pts[u])]++] = u;
  }

  std::vector<InputEdge> edges;
  for (VertexId u = 0; u < n; ++u) {
    const std::size_t cx = cell_coord(pts[u].x, cells);
    const std::size_t cy = cell_coord(pts[u].y, cells);
    for (std::size_t ny = cy > 0 ? cy - 1 : 0; ny <= std::min(cells - 1, cy + 1); ++ny) {
      for (std::size_t nx = cx > 0 ? cx - 1 : 0; nx <= std::min(cells - 1, cx + 1); ++nx) {
        const std::size_t c = ny * cells + nx;
        for (std::size_t i = cell_start[c]; i < cell_start[c + 1]; ++i) {
          const VertexId v = bucket[i];
          if (v <= u) continue;
          if (std::hypot(pts[u].x - pts[v].x, pts[u].y - pts[v].y) < radius) {
            edges.push_back({u, v, rgg_weight(pts, u, v, seed, weights)});
          }
        }
      }
    }
  }
  return build_graph(n, edges);
}

Graph gen_rgg(unsigned x, std::uint64_t seed, WeightMode weights) {
  const auto pts = rgg_points(x, seed);
  return rgg_from_points(pts, rgg_radius(static_cast<VertexId>(pts.size())), seed, weights);
}

Graph generate(const GeneratorSpec& spec) {
  if (spec.x < 1 || spec.x > 30) throw GraphError("x must be in [1, 30]");
  if (spec.family == Family::random) {
    if (spec.alpha == 0) throw GraphError("alpha must be positive");
    return gen_random(VertexId{1} << spec.x, spec.alpha, spec.seed, spec.weights);
  }
  return gen_rgg(spec.x, spec.seed, spec.weights);
}

}  // namespace localmax
