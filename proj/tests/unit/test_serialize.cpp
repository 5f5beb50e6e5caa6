#include <doctest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "gridsight/error.hpp"
#include "gridsight/json_io.hpp"
#include "gridsight/serialize.hpp"

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

const ScaleLadder kLadder{{150, 200}, 1.5};

}  // namespace

TEST_CASE("report json layout") {
  const StreetGraph g = fixtures::barrier_grid();
  const auto report = analyze(g, fixtures::single_poi(fixtures::kBarrierAnchor), kLadder);
  const Json j = report_to_json(report);
  CHECK(j["degrees"].size() == 16);
  CHECK(j["degrees"]["11"] == 2);
  CHECK(j["degrees"]["1"] == 0);
  REQUIRE(j["pairs"].size() == 2);
  CHECK(j["pairs"][0]["poi"] == "p1");
  CHECK(j["pairs"][0]["radius_m"] == 150.0);
  CHECK(j["pairs"][0]["vertices"] == Json::array({7, 11}));
  CHECK(j["summary"] == Json{{"inconsistent_vertices", 3}, {"degree_sum", 4}, {"degree_max", 2}});
  // Key order is part of the format.
  auto it = j.begin();
  CHECK(it.key() == "degrees");
  CHECK((++it).key() == "pairs");
  CHECK((++it).key() == "summary");
  CHECK(report_from_json(j) == report);
  CHECK(code_of([] { (void)report_from_json(Json::array()); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("placement json") {
  const StreetGraph g = fixtures::grid_graph(4, 4);
  SUBCASE("coordinates snap to the nearest vertex") {
    const auto p = placement_from_json(g, parse_json(R"([{"id":"h","category":"hospital","lat":140,"lon":110}])"));
    REQUIRE(p.size() == 1);
    CHECK(p.pois[0].anchor == VertexId{6});
    CHECK(p.pois[0].category == "hospital");
  }
  SUBCASE("vertex ids and wrapped lists") {
    const auto p = placement_from_json(g, parse_json(R"({"pois":[{"id":"a","category":"school","vertex":16}]})"));
    CHECK(p.pois[0].anchor == VertexId{16});
    const Json out = placement_to_json(g, p);
    CHECK(out[0] == Json{{"id", "a"}, {"category", "school"}, {"vertex", 16}, {"lat", 300.0}, {"lon", 300.0}});
    CHECK(placement_from_json(g, out) == p);
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { (void)placement_from_json(g, parse_json(R"([{"id":"a","vertex":99}])")); }) ==
          ErrorCode::kInvalidInput);
    CHECK(code_of([&] { (void)placement_from_json(g, parse_json(R"([{"id":"a","vertex":1},{"id":"a","vertex":2}])")); }) ==
          ErrorCode::kInvalidInput);
    CHECK(code_of([&] { (void)placement_from_json(g, parse_json(R"([{"category":"x","vertex":1}])")); }) ==
          ErrorCode::kInvalidInput);
    CHECK(code_of([&] { (void)placement_from_json(g, parse_json(R"("nope")")); }) == ErrorCode::kInvalidInput);
  }
}

TEST_CASE("ladder json") {
  CHECK(ladder_from_json(Json::object()).radii == std::vector<double>{400, 800, 1600});
  const auto l = ladder_from_json(parse_json(R"({"radii":[100,300],"tau":1.2})"));
  CHECK(l.radii == std::vector<double>{100, 300});
  CHECK(l.tau == 1.2);
  CHECK(ladder_to_json(l) == parse_json(R"({"radii":[100.0,300.0],"tau":1.2})"));
  CHECK(code_of([] { (void)ladder_from_json(parse_json(R"({"radii":[300,100]})")); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("search config") {
  const auto c = search_config_from_json(parse_json(
      R"({"candidate_pool":"all","max_iterations":7,"restarts":3,"seed":9,"threads":2,"ladder":{"radii":[50],"tau":1}})"));
  CHECK(c.candidate_pool == CandidatePool::kAllVertices);
  CHECK(c.max_iterations == 7);
  CHECK(c.restarts == 3);
  CHECK(c.seed == 9);
  CHECK(c.threads == 2);
  CHECK(c.ladder.radii == std::vector<double>{50});
  CHECK(search_config_from_json(parse_json(R"({"top_m":16})")).top_m == 16);
  CHECK(code_of([] { (void)search_config_from_json(parse_json(R"({"colour":1})")); }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([] { (void)search_config_from_json(parse_json(R"({"restarts":0})")); }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([] { (void)search_config_from_json(parse_json(R"({"candidate_pool":"some"})")); }) ==
        ErrorCode::kInvalidConfig);
  CHECK(code_of([] { (void)search_config_from_json(parse_json(R"({"ladder":{"tau":0.2}})")); }) ==
        ErrorCode::kInvalidConfig);
}

TEST_CASE("toml subset") {
  const Json j = parse_toml_subset(R"(# search settings
candidate_pool = "top-m"
top_m = 64          # trailing comment
restarts = 5
seed = 42

[ladder]
radii = [400, 800.5, 1600]
tau = 1.5
)");
  CHECK(j["candidate_pool"] == "top-m");
  CHECK(j["top_m"] == 64);
  CHECK(j["ladder"]["radii"][1] == 800.5);
  const auto c = search_config_from_json(j);
  CHECK(c.restarts == 5);
  CHECK(c.ladder.tau == 1.5);
  CHECK_THROWS_AS((void)parse_toml_subset("restarts 5"), Error);
  CHECK_THROWS_AS((void)parse_toml_subset("a = 1\na = 2"), Error);
  CHECK_THROWS_AS((void)parse_toml_subset("[ladder\n"), Error);

  const auto dir = std::filesystem::temp_directory_path() / "gridsight_serialize_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "search.toml", "restarts = 2\n[ladder]\nradii = [10]\n");
  write_text_file(dir / "search.json", R"({"restarts": 4})");
  CHECK(load_search_config(dir / "search.toml").restarts == 2);
  CHECK(load_search_config(dir / "search.json").restarts == 4);
  CHECK(code_of([&] { (void)load_search_config(dir / "missing.toml"); }) == ErrorCode::kIo);
  std::filesystem::remove_all(dir);
}

TEST_CASE("geojson export") {
  const StreetGraph g = fixtures::barrier_grid();
  const PoiPlacement p = fixtures::placement_of({fixtures::kBarrierAnchor, VertexId{16}});
  const auto report = analyze(g, p, kLadder);
  const Json j = geojson_export(g, report, &p);
  CHECK(j["type"] == "FeatureCollection");
  CHECK(j["features"].size() == g.vertex_count() + p.size());
  const Json& v11 = j["features"][10];
  CHECK(v11["properties"]["id"] == 11);
  CHECK(v11["properties"]["degree"] == report.degree_of(VertexId{11}));
  CHECK(v11["geometry"]["coordinates"] == Json::array({200.0, 200.0}));
  CHECK(j["features"][16]["properties"]["kind"] == "poi");
  CHECK(j["features"][16]["properties"]["vertex"] == 6);
  CHECK(geojson_export(g, report, nullptr)["features"].size() == g.vertex_count());
}

TEST_CASE("indicator csv") {
  const StreetGraph path = fixtures::path_graph(3, 1.0);
  const std::string csv = indicator_csv(path, parse_indicator_list("betweenness,closeness"));
  CHECK(csv.rfind("vertex_id,indicator,value\n", 0) == 0);
  CHECK(csv.find("2,betweenness,1\n") != std::string::npos);
  CHECK(csv.find("2,closeness,1\n") != std::string::npos);
  CHECK(csv.find("1,betweenness,0\n1,closeness,0.6666666666666666\n") != std::string::npos);
  CHECK(parse_indicator_list("").size() == 3);
  CHECK(parse_indicator_list("closeness, closeness").size() == 1);
  CHECK_THROWS_AS((void)parse_indicator_list("closeness,rank"), Error);
}

TEST_CASE("solution json") {
  const StreetGraph g = fixtures::path_graph(5);
  SearchConfig c;
  c.candidate_pool = CandidatePool::kAllVertices;
  c.ladder = {{200}, 1.0};
  const auto s = local_search(g, fixtures::single_poi(VertexId{1}), c);
  const Json j = solution_to_json(g, s);
  CHECK(j["trace"][0]["poi"].is_null());
  CHECK(j["trace"][0]["iteration"] == 0);
  CHECK(j["trace"][1]["from"] == 1);
  CHECK(j["objective"]["inconsistent_vertices"] == 0);
  CHECK(j["objective"].contains("degree_sum"));
  CHECK(j["objective"].contains("mean_nearest_poi_distance"));
  CHECK(j["converged"] == true);
  CHECK(j["centrality_delta"]["indicator"] == "closeness");
  CHECK(j["centrality_delta"]["before"].contains("p1"));
  CHECK(j["placement"][0]["vertex"] == 3);
}
