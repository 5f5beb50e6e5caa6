#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "gridsight/error.hpp"
#include "gridsight/geo.hpp"
#include "gridsight/json_io.hpp"
#include "gridsight/shortest_path.hpp"
#include "gridsight/street_graph.hpp"
#include "oracles.hpp"

using namespace gridsight;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIo;
}

std::vector<VertexId> ids(std::initializer_list<std::uint64_t> values) {
  std::vector<VertexId> out;
  for (auto v : values) out.push_back(VertexId{v});
  return out;
}

}  // namespace

TEST_CASE("haversine reference distances") {
  CHECK(haversine_distance({12.5, -3.25}, {12.5, -3.25}) == 0.0);
  // Quarter and half great circle for R = 6,371,008.8 m, frozen from pi * R / 2 and pi * R.
  const double quarter = std::numbers::pi * kEarthRadiusMeters / 2.0;
  CHECK(std::abs(quarter - 10'007'557.22) <= 0.01);
  CHECK(std::abs(haversine_distance({0, 0}, {0, 90}) - 10'007'557.22) <= 1.0);
  CHECK(std::abs(haversine_distance({0, 0}, {0, 180}) - 20'015'114.44) <= 1.0);
  CHECK(std::abs(haversine_distance({0, 0}, {90, 0}) - quarter) <= 1e-6);
  CHECK(haversine_distance({40, 10}, {41, 12}) == haversine_distance({41, 12}, {40, 10}));
  CHECK(haversine_distance({40, 10}, {40, 10.0000001}) > 0.0);
}

TEST_CASE("coordinate validation") {
  CHECK(is_valid_geographic({90, 180}));
  CHECK_FALSE(is_valid_geographic({90.5, 0}));
  CHECK_FALSE(is_valid_geographic({0, -180.1}));
  CHECK_FALSE(is_valid_geographic({std::nan(""), 0}));
  GraphBuilder b(Profile::kDrive);
  CHECK(code_of([&] { b.add_vertex(VertexId{1}, {91, 0}); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("builder rules") {
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  b.add_vertex(VertexId{2}, {0, 100});
  b.add_vertex(VertexId{1}, {0, 0});
  b.add_vertex(VertexId{3}, {0, 200});
  CHECK(code_of([&] { b.add_vertex(VertexId{1}, {5, 5}); }) == ErrorCode::kInvalidInput);
  CHECK(code_of([&] { b.add_edge(VertexId{1}, VertexId{9}, 10, false); }) == ErrorCode::kInvalidVertex);
  CHECK(code_of([&] { b.add_edge(VertexId{1}, VertexId{2}, 0, false); }) == ErrorCode::kInvalidInput);
  CHECK(code_of([&] { b.add_edge(VertexId{1}, VertexId{2}, 99, false); }) == ErrorCode::kInvalidInput);
  b.add_edge(VertexId{1}, VertexId{2}, 150, false);
  b.add_edge(VertexId{2}, VertexId{1}, 120, false);  // parallel, shorter: kept
  b.add_edge(VertexId{1}, VertexId{1}, 5, false);    // self-loop: dropped
  b.add_edge(VertexId{2}, VertexId{3}, 100, true);
  const StreetGraph g = b.build();
  CHECK(g.vertex_count() == 3);
  CHECK(g.id(0) == VertexId{1});
  CHECK(g.id(2) == VertexId{3});
  REQUIRE(g.edge_count() == 2);
  CHECK(g.edges()[0].length_m == 120.0);
  CHECK(g.has_directed_edges());
  CHECK(g.out_arcs(g.index_of(VertexId{3})).empty());
  CHECK(g.out_arcs(g.index_of(VertexId{2})).size() == 2);
  CHECK(code_of([&] { (void)g.index_of(VertexId{42}); }) == ErrorCode::kInvalidVertex);
  CHECK(code_of([] { (void)GraphBuilder(Profile::kWalk).build(); }) == ErrorCode::kEmptyGraph);
}

TEST_CASE("undirected adjacency is symmetric") {
  const StreetGraph g = fixtures::grid_graph(3, 5);
  std::size_t arcs = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    for (const Arc& a : g.out_arcs(v)) {
      ++arcs;
      bool back = false;
      for (const Arc& r : g.out_arcs(a.target)) back |= r.target == v && r.length_m == a.length_m;
      CHECK(back);
    }
  }
  CHECK(arcs == 2 * g.edge_count());
}

TEST_CASE("component labels") {
  const StreetGraph g = fixtures::barrier_grid(true);
  const auto labels = g.component_labels();
  CHECK(labels[g.index_of(VertexId{1})] == labels[g.index_of(VertexId{16})]);
  CHECK(labels[g.index_of(fixtures::kBarrierIsolated)] != labels[g.index_of(VertexId{1})]);
}

TEST_CASE("path graph distances") {
  const StreetGraph g = fixtures::path_graph(3);  // A=1, B=2, C=3
  SUBCASE("single source, unbounded") {
    const DistanceMap m = shortest_path_distances(g, ids({1}));
    REQUIRE(m.size() == 3);
    CHECK(*m.find(VertexId{1}) == 0.0);
    CHECK(*m.find(VertexId{2}) == 100.0);
    CHECK(*m.find(VertexId{3}) == 200.0);
    CHECK_FALSE(m.cutoff().has_value());
  }
  SUBCASE("multi source minimum") {
    const DistanceMap m = shortest_path_distances(g, ids({1, 3}));
    CHECK(*m.find(VertexId{1}) == 0.0);
    CHECK(*m.find(VertexId{2}) == 100.0);
    CHECK(*m.find(VertexId{3}) == 0.0);
  }
  SUBCASE("cutoff omits far vertices") {
    const DistanceMap m = shortest_path_distances(g, ids({1}), 150.0);
    CHECK(m.size() == 2);
    CHECK(m.contains(VertexId{2}));
    CHECK_FALSE(m.contains(VertexId{3}));
    CHECK(m.reached() == ids({1, 2}));
  }
  CHECK(code_of([&] { (void)shortest_path_distances(g, ids({7})); }) == ErrorCode::kInvalidVertex);
  CHECK(code_of([&] { (void)shortest_path_distances(g, {}); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("directed arcs are followed outbound only") {
  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  b.add_vertex(VertexId{1}, {0, 0});
  b.add_vertex(VertexId{2}, {0, 10});
  b.add_edge(VertexId{1}, VertexId{2}, 10, true);
  const StreetGraph g = b.build();
  CHECK(shortest_path_distances(g, ids({1})).contains(VertexId{2}));
  CHECK_FALSE(shortest_path_distances(g, ids({2})).contains(VertexId{1}));
}

TEST_CASE("nearest vertex") {
  const StreetGraph grid = fixtures::grid_graph(4, 4);
  CHECK(nearest_vertex(grid, grid.point(grid.index_of(VertexId{7}))) == VertexId{7});
  // Brute-force scan over all vertices for the centroid (150, 150).
  const GeoPoint centroid{150, 150};
  VertexId best{0};
  double best_d = 1e300;
  for (VertexIndex v = 0; v < grid.vertex_count(); ++v) {
    const double d = oracles::straight(grid, v, v) + planar_distance(grid.point(v), centroid);
    if (d < best_d) best_d = d, best = grid.id(v);
  }
  CHECK(best == VertexId{6});
  CHECK(nearest_vertex(grid, centroid) == VertexId{6});

  GraphBuilder b(Profile::kDrive, Metric::kPlanar);
  b.add_vertex(VertexId{9}, {0, 10});
  b.add_vertex(VertexId{5}, {0, -10});
  CHECK(nearest_vertex(b.build(), {0, 0}) == VertexId{5});
}

TEST_CASE("graph json round trip") {
  const StreetGraph g = fixtures::barrier_grid(true);
  const Json j = graph_to_json(g);
  CHECK(j["vertices"].size() == 17);
  CHECK(j["edges"].size() == 22);
  CHECK(j["profile"] == "drive");
  const StreetGraph back = graph_from_json(j);
  CHECK(to_document(graph_to_json(back)) == to_document(j));

  const Json geo = graph_to_json(fixtures::path_graph(2));
  CHECK(geo.contains("metric"));
  CHECK(code_of([] { (void)graph_from_json(parse_json(R"({"vertices":[],"edges":[],"profile":"drive"})")); }) ==
        ErrorCode::kEmptyExtract);
  CHECK(code_of([] { (void)graph_from_json(parse_json(R"({"vertices":"no"})")); }) == ErrorCode::kInvalidInput);
  CHECK(code_of([] { (void)parse_json("{\"a\":"); }) == ErrorCode::kParse);
}

TEST_CASE("metric properties on random fixtures") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 12; ++round) {
    const StreetGraph g = round % 2 ? fixtures::random_geometric(rng, 50) : fixtures::random_tree(rng, 50);
    const auto ap = oracles::floyd_warshall(g);
    const std::size_t n = g.vertex_count();
    for (VertexIndex s = 0; s < n; ++s) {
      const auto dense = dense_distances(g, std::vector<VertexIndex>{s});
      for (std::size_t v = 0; v < n; ++v) {
        if (std::isinf(ap.at(s, v))) {
          CHECK(std::isinf(dense[v]));
          continue;
        }
        CHECK(std::abs(dense[v] - ap.at(s, v)) <= 1e-9);
        CHECK(dense[v] >= oracles::straight(g, s, v) - kDistanceEpsilon);
        for (std::size_t w = 0; w < n; ++w) {
          if (!std::isinf(ap.at(v, w))) CHECK(ap.at(s, w) <= ap.at(s, v) + ap.at(v, w) + 1e-9);
        }
      }
      // Raising the cutoff never removes a vertex or changes a distance.
      const auto low = shortest_path_distances(g, std::vector{g.id(s)}, 200.0);
      const auto high = shortest_path_distances(g, std::vector{g.id(s)}, 400.0);
      for (const auto& e : low.entries()) {
        REQUIRE(high.find(e.vertex).has_value());
        CHECK(*high.find(e.vertex) == e.meters);
        CHECK(e.meters <= 200.0 + kDistanceEpsilon);
      }
    }
    // Multi-source equals the pointwise minimum.
    const std::vector<VertexId> sources{g.id(0), g.id(static_cast<VertexIndex>(n - 1))};
    const auto multi = shortest_path_distances(g, sources);
    for (VertexIndex v = 0; v < n; ++v) {
      const double want = std::min(ap.at(0, v), ap.at(n - 1, v));
      const auto got = multi.find(g.id(v));
      if (std::isinf(want)) CHECK_FALSE(got.has_value());
      else CHECK(std::abs(*got - want) <= 1e-9);
    }
  }
}
