#include "fixtures.hpp"

#include <cmath>
#include <numbers>

namespace fixtures {

using gridsight::GeoPoint;
using gridsight::GraphBuilder;
using gridsight::Metric;
using gridsight::Profile;

namespace {

GeoPoint xy(double x, double y) { return GeoPoint{y, x}; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

StreetGraph path_graph(std::size_t n, double spacing) {
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  for (std::size_t i = 0; i < n; ++i) b.add_vertex(VertexId{i + 1}, xy(spacing * static_cast<double>(i), 0.0));
  for (std::size_t i = 1; i < n; ++i) b.add_straight_edge(VertexId{i}, VertexId{i + 1});
  return b.build();
}

StreetGraph star_graph(std::size_t leaves) {
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  b.add_vertex(VertexId{1}, xy(0, 0));
  for (std::size_t i = 0; i < leaves; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(leaves);
    b.add_vertex(VertexId{i + 2}, xy(std::cos(a), std::sin(a)));
    b.add_edge(VertexId{1}, VertexId{i + 2}, 1.0, false);
  }
  return b.build();
}

StreetGraph cycle_graph(std::size_t n) {
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  const double radius = 0.5 / std::sin(std::numbers::pi / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    b.add_vertex(VertexId{i + 1}, xy(radius * std::cos(a), radius * std::sin(a)));
  }
  for (std::size_t i = 0; i < n; ++i) b.add_edge(VertexId{i + 1}, VertexId{(i + 1) % n + 1}, 1.0, false);
  return b.build();
}

StreetGraph grid_graph(std::size_t rows, std::size_t cols, double spacing) {
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      b.add_vertex(grid_id(r, c, cols), xy(spacing * static_cast<double>(c), spacing * static_cast<double>(r)));
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) b.add_straight_edge(grid_id(r, c, cols), grid_id(r, c + 1, cols));
      if (r + 1 < rows) b.add_straight_edge(grid_id(r, c, cols), grid_id(r + 1, c, cols));
    }
  }
  return b.build();
}

StreetGraph barrier_grid(bool isolated) {
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      b.add_vertex(grid_id(r, c), xy(kBlock * static_cast<double>(c), kBlock * static_cast<double>(r)));
    }
  }
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const bool cut = c == 1 && (r == 1 || r == 2);
      if (c + 1 < 4 && !cut) b.add_straight_edge(grid_id(r, c), grid_id(r, c + 1));
      if (r + 1 < 4) b.add_straight_edge(grid_id(r, c), grid_id(r + 1, c));
    }
  }
  if (isolated) b.add_vertex(kBarrierIsolated, xy(150, 150));
  return b.build();
}

gridsight::PoiPlacement single_poi(VertexId anchor, std::string id, std::string category) {
  return gridsight::PoiPlacement{{{std::move(id), std::move(category), anchor}}};
}

gridsight::PoiPlacement placement_of(const std::vector<VertexId>& anchors) {
  gridsight::PoiPlacement out;
  for (std::size_t i = 0; i < anchors.size(); ++i) out.pois.push_back({"p" + std::to_string(i + 1), "school", anchors[i]});
  return out;
}

StreetGraph random_grid(std::mt19937_64& rng, std::size_t max_side) {
  const std::size_t rows = pick(rng, 2, max_side);
  const std::size_t cols = pick(rng, 2, std::min(max_side, 200 / rows));
  const double spacing = uniform(rng, 50, 150);
  const double keep = uniform(rng, 0.6, 1.0);
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      b.add_vertex(grid_id(r, c, cols), xy(spacing * static_cast<double>(c), spacing * static_cast<double>(r)));
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols && uniform(rng, 0, 1) < keep) b.add_straight_edge(grid_id(r, c, cols), grid_id(r, c + 1, cols));
      if (r + 1 < rows && uniform(rng, 0, 1) < keep) b.add_straight_edge(grid_id(r, c, cols), grid_id(r + 1, c, cols));
    }
  }
  return b.build();
}

StreetGraph random_tree(std::mt19937_64& rng, std::size_t max_n) {
  const std::size_t n = pick(rng, 2, max_n);
  const double side = uniform(rng, 300, 3000);
  GraphBuilder b(Profile::kWalk, Metric::kPlanar);
  std::vector<GeoPoint> points;
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(xy(uniform(rng, 0, side), uniform(rng, 0, side)));
    b.add_vertex(VertexId{i + 1}, points.back());
  }
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t parent = pick(rng, 0, i - 1);
    const double chord = gridsight::planar_distance(points[i], points[parent]);
    if (chord <= 0) continue;
    b.add_edge(VertexId{i + 1}, VertexId{parent + 1}, chord * uniform(rng, 1.0, 1.6), false);
  }
  return b.build();
}

StreetGraph random_geometric(std::mt19937_64& rng, std::size_t max_n) {
  const std::size_t n = pick(rng, 2, max_n);
  const double side = 1000.0;
  const double link = side * std::sqrt(uniform(rng, 1.5, 4.0) / (std::numbers::pi * static_cast<double>(n)));
  const bool directed = uniform(rng, 0, 1) < 0.25;
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  std::vector<GeoPoint> points;
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(xy(uniform(rng, 0, side), uniform(rng, 0, side)));
    b.add_vertex(VertexId{i + 1}, points.back());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double chord = gridsight::planar_distance(points[i], points[j]);
      if (chord <= 0 || chord > link) continue;
      const double length = chord * uniform(rng, 1.0, 1.3);
      if (directed && uniform(rng, 0, 1) < 0.3) {
        if (uniform(rng, 0, 1) < 0.5) b.add_edge(VertexId{i + 1}, VertexId{j + 1}, length, true);
        else b.add_edge(VertexId{j + 1}, VertexId{i + 1}, length, true);
      } else {
        b.add_edge(VertexId{i + 1}, VertexId{j + 1}, length, false);
      }
    }
  }
  return b.build();
}

StreetGraph random_weighted(std::mt19937_64& rng, std::size_t n, bool allow_directed) {
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  for (std::size_t i = 0; i < n; ++i) b.add_vertex(VertexId{i + 1}, xy(uniform(rng, 0, 0.5), uniform(rng, 0, 0.5)));
  const double density = uniform(rng, 1.5, 4.0) / static_cast<double>(n);
  const bool integral = uniform(rng, 0, 1) < 0.6;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform(rng, 0, 1) >= density) continue;
      const double length = integral ? static_cast<double>(pick(rng, 1, 4)) : uniform(rng, 1.0, 5.0);
      const bool directed = allow_directed && uniform(rng, 0, 1) < 0.4;
      if (directed && uniform(rng, 0, 1) < 0.5) b.add_edge(VertexId{j + 1}, VertexId{i + 1}, length, true);
      else b.add_edge(VertexId{i + 1}, VertexId{j + 1}, length, directed);
    }
  }
  return b.build();
}

std::vector<StreetGraph> reach_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<StreetGraph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    switch (i % 3) {
      case 0: out.push_back(random_grid(rng)); break;
      case 1: out.push_back(random_tree(rng)); break;
      default: out.push_back(random_geometric(rng)); break;
    }
  }
  return out;
}

}  // namespace fixtures
