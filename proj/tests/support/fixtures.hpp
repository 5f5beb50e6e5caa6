#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gridsight/inconsistency.hpp"
#include "gridsight/street_graph.hpp"

namespace fixtures {

using gridsight::StreetGraph;
using gridsight::VertexId;

inline constexpr double kBlock = 100.0;

// Planar path 1 - 2 - ... - n along x, `spacing` meters apart.
StreetGraph path_graph(std::size_t n, double spacing = kBlock);

// Planar star: center 1 at the origin, leaves 2..leaves+1 on the unit circle, unit edges.
StreetGraph star_graph(std::size_t leaves);

// Planar cycle of n vertices on a regular polygon with unit sides.
StreetGraph cycle_graph(std::size_t n);

// Planar rows x cols grid, id = row * cols + col + 1, x = spacing * col, y = spacing * row.
StreetGraph grid_graph(std::size_t rows, std::size_t cols, double spacing = kBlock);
inline VertexId grid_id(std::size_t row, std::size_t col, std::size_t cols = 4) {
  return VertexId{row * cols + col + 1};
}

// 4x4 grid whose horizontal edges between columns 1 and 2 are cut on rows 1 and 2.
// Crossing from the left half to the right half needs a detour over row 0 or row 3.
// With `isolated`, vertex 17 sits unconnected at (150, 150).
StreetGraph barrier_grid(bool isolated = false);
inline constexpr VertexId kBarrierAnchor{6};  // row 1, col 1 (left-center)
inline constexpr VertexId kBarrierIsolated{17};

gridsight::PoiPlacement single_poi(VertexId anchor, std::string id = "p1", std::string category = "hospital");
gridsight::PoiPlacement placement_of(const std::vector<VertexId>& anchors);

// Random corpora. All planar, every edge length >= its chord.
StreetGraph random_grid(std::mt19937_64& rng, std::size_t max_side = 14);
StreetGraph random_tree(std::mt19937_64& rng, std::size_t max_n = 200);
StreetGraph random_geometric(std::mt19937_64& rng, std::size_t max_n = 200);

// Small graph with integer lengths on a sub-meter footprint, so equal-length shortest
// paths are common. Some edges are directed when `allow_directed` is set.
StreetGraph random_weighted(std::mt19937_64& rng, std::size_t n, bool allow_directed);

// 200 graphs mixing grids, trees and random geometric graphs, n <= 200.
std::vector<StreetGraph> reach_corpus(std::uint64_t seed, std::size_t count = 200);

}  // namespace fixtures
