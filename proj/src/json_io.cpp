#include "gridsight/json_io.hpp"

#include <fstream>
#include <sstream>

#include "gridsight/error.hpp"

namespace gridsight {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "malformed JSON");
  }
}

std::string to_document(const Json& value) { return value.dump(2) + "\n"; }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

Json graph_to_json(const StreetGraph& graph) {
  Json vertices = Json::array();
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    const GeoPoint p = graph.point(v);
    vertices.push_back({{"id", graph.id(v).value}, {"lat", p.lat}, {"lon", p.lon}});
  }
  Json edges = Json::array();
  for (const Edge& e : graph.edges()) {
    edges.push_back({{"u", graph.id(e.from).value},
                     {"v", graph.id(e.to).value},
                     {"length_m", e.length_m},
                     {"directed", e.directed}});
  }
  Json doc = {{"vertices", std::move(vertices)}, {"edges", std::move(edges)},
              {"profile", std::string(profile_name(graph.profile()))}};
  if (graph.metric() == Metric::kPlanar) doc["metric"] = "planar";
  return doc;
}

StreetGraph graph_from_json(const Json& document) {
  try {
    if (!document.is_object() || !document.contains("vertices") || !document.contains("edges")) {
      throw Error(ErrorCode::kInvalidInput, "graph document needs 'vertices' and 'edges'");
    }
    const Profile profile = parse_profile(document.value("profile", std::string("drive")));
    const std::string metric = document.value("metric", std::string("haversine"));
    if (metric != "haversine" && metric != "planar") {
      throw Error(ErrorCode::kInvalidInput, "unknown metric '" + metric + "'");
    }
    GraphBuilder builder(profile, metric == "planar" ? Metric::kPlanar : Metric::kHaversine);
    for (const auto& v : document.at("vertices")) {
      builder.add_vertex(VertexId{v.at("id").get<std::uint64_t>()},
                         GeoPoint{v.at("lat").get<double>(), v.at("lon").get<double>()});
    }
    if (builder.vertex_count() == 0) throw Error(ErrorCode::kEmptyExtract, "graph document has no vertices");
    for (const auto& e : document.at("edges")) {
      builder.add_edge(VertexId{e.at("u").get<std::uint64_t>()}, VertexId{e.at("v").get<std::uint64_t>()},
                       e.at("length_m").get<double>(), e.value("directed", false));
    }
    return builder.build();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("graph document: ") + e.what());
  }
}

}  // namespace gridsight
