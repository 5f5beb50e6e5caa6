#include "gridsight/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "gridsight/error.hpp"

namespace gridsight {

namespace {

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return ec == std::errc() ? std::string(buffer, ptr) : std::string("nan");
}

Json vertex_or_null(const std::optional<VertexId>& v) { return v ? Json(v->value) : Json(nullptr); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void toml_fail(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, "config line " + std::to_string(line) + ": " + message);
}

Json toml_scalar(const std::string& raw, std::size_t line) {
  if (raw.empty()) toml_fail(line, "missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') toml_fail(line, "unterminated string");
    return raw.substr(1, raw.size() - 2);
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  std::string digits;
  for (const char c : raw) {
    if (c != '_') digits.push_back(c);
  }
  const bool is_float = digits.find_first_of(".eE") != std::string::npos;
  if (!is_float) {
    std::int64_t integer = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), integer);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return integer;
    std::uint64_t unsigned_integer = 0;
    const auto [uptr, uec] = std::from_chars(digits.data(), digits.data() + digits.size(), unsigned_integer);
    if (uec == std::errc() && uptr == digits.data() + digits.size()) return unsigned_integer;
  } else {
    double real = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), real);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return real;
  }
  toml_fail(line, "cannot read value '" + raw + "'");
}

Json toml_value(const std::string& raw, std::size_t line) {
  if (raw.empty() || raw.front() != '[') return toml_scalar(raw, line);
  if (raw.back() != ']') toml_fail(line, "arrays must close on the same line");
  Json array = Json::array();
  const std::string inner = raw.substr(1, raw.size() - 2);
  std::size_t start = 0;
  while (start <= inner.size()) {
    const auto comma = inner.find(',', start);
    const std::string item = trim(std::string_view(inner).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) array.push_back(toml_scalar(item, line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return array;
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

}  // namespace

Json report_to_json(const InconsistencyReport& report) {
  Json degrees = Json::object();
  for (const VertexDegree& d : report.degrees) degrees[std::to_string(d.vertex.value)] = d.degree;
  Json pairs = Json::array();
  for (const PairResult& pair : report.pairs) {
    Json vertices = Json::array();
    for (const VertexId v : pair.vertices) vertices.push_back(v.value);
    pairs.push_back({{"poi", pair.poi_id}, {"radius_m", pair.radius_m}, {"vertices", std::move(vertices)}});
  }
  return {{"degrees", std::move(degrees)},
          {"pairs", std::move(pairs)},
          {"summary",
           {{"inconsistent_vertices", report.summary.inconsistent_vertices},
            {"degree_sum", report.summary.degree_sum},
            {"degree_max", report.summary.degree_max}}}};
}

InconsistencyReport report_from_json(const Json& document) {
  try {
    InconsistencyReport report;
    for (const auto& [key, value] : document.at("degrees").items()) {
      std::uint64_t id = 0;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
      if (ec != std::errc() || ptr != key.data() + key.size()) {
        throw Error(ErrorCode::kInvalidInput, "report degree key '" + key + "' is not a vertex id");
      }
      report.degrees.push_back({VertexId{id}, value.get<std::uint32_t>()});
    }
    std::sort(report.degrees.begin(), report.degrees.end(),
              [](const VertexDegree& a, const VertexDegree& b) { return a.vertex < b.vertex; });
    for (const auto& pair : document.at("pairs")) {
      PairResult result{pair.at("poi").get<std::string>(), pair.at("radius_m").get<double>(), {}};
      for (const auto& v : pair.at("vertices")) result.vertices.push_back(VertexId{v.get<std::uint64_t>()});
      report.pairs.push_back(std::move(result));
    }
    const auto& summary = document.at("summary");
    report.summary.inconsistent_vertices = summary.at("inconsistent_vertices").get<std::size_t>();
    report.summary.degree_sum = summary.at("degree_sum").get<std::size_t>();
    report.summary.degree_max = summary.at("degree_max").get<std::uint32_t>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("report document: ") + e.what());
  }
}

Json objective_to_json(const Objective& objective) {
  return {{"inconsistent_vertices", objective.inconsistent_vertices},
          {"degree_sum", objective.degree_sum},
          {"mean_nearest_poi_distance", objective.mean_nearest_poi_distance}};
}

Json placement_to_json(const StreetGraph& graph, const PoiPlacement& placement) {
  Json out = Json::array();
  for (const Poi& poi : placement.pois) {
    const GeoPoint p = graph.point(graph.index_of(poi.anchor));
    out.push_back({{"id", poi.id}, {"category", poi.category}, {"vertex", poi.anchor.value}, {"lat", p.lat},
                   {"lon", p.lon}});
  }
  return out;
}

PoiPlacement placement_from_json(const StreetGraph& graph, const Json& document) {
  const Json& list = document.is_object() && document.contains("pois") ? document.at("pois") : document;
  if (!list.is_array()) throw Error(ErrorCode::kInvalidInput, "POIs must be a JSON list");
  PoiPlacement placement;
  try {
    for (const auto& entry : list) {
      Poi poi;
      poi.id = entry.at("id").get<std::string>();
      poi.category = entry.value("category", std::string());
      if (entry.contains("vertex")) {
        poi.anchor = VertexId{entry.at("vertex").get<std::uint64_t>()};
        if (!graph.contains(poi.anchor)) {
          throw Error(ErrorCode::kInvalidInput, "POI '" + poi.id + "' names unknown vertex " +
                                                    std::to_string(poi.anchor.value));
        }
      } else {
        poi.anchor = nearest_vertex(graph, {entry.at("lat").get<double>(), entry.at("lon").get<double>()});
      }
      placement.pois.push_back(std::move(poi));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("POI list: ") + e.what());
  }
  std::set<std::string_view> ids;
  for (const Poi& poi : placement.pois) {
    if (!ids.insert(poi.id).second) throw Error(ErrorCode::kInvalidInput, "duplicate POI id '" + poi.id + "'");
  }
  return placement;
}

Json ladder_to_json(const ScaleLadder& ladder) { return {{"radii", ladder.radii}, {"tau", ladder.tau}}; }

ScaleLadder ladder_from_json(const Json& document) {
  ScaleLadder ladder;
  try {
    if (document.contains("radii")) ladder.radii = document.at("radii").get<std::vector<double>>();
    if (document.contains("tau")) ladder.tau = document.at("tau").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("scale ladder: ") + e.what());
  }
  ladder.validate();
  return ladder;
}

Json centrality_delta_to_json(const CentralityDelta& delta) {
  Json before = Json::object();
  Json after = Json::object();
  for (const auto& [id, value] : delta.before) before[id] = value;
  for (const auto& [id, value] : delta.after) after[id] = value;
  Json changes = Json::array();
  for (const AnchorChange& c : delta.poi_anchor_changes) {
    changes.push_back({{"poi", c.poi_id}, {"from", c.from.value}, {"to", c.to.value}, {"before", c.before},
                       {"after", c.after}});
  }
  return {{"indicator", std::string(indicator_name(delta.indicator))},
          {"before", std::move(before)},
          {"after", std::move(after)},
          {"mean_change", delta.mean_change},
          {"poi_anchor_changes", std::move(changes)}};
}

Json solution_to_json(const StreetGraph& graph, const PlacementSolution& solution) {
  Json trace = Json::array();
  for (const TraceEntry& entry : solution.trace) {
    trace.push_back({{"iteration", entry.iteration},
                     {"poi", entry.poi_id ? Json(*entry.poi_id) : Json(nullptr)},
                     {"from", vertex_or_null(entry.from)},
                     {"to", vertex_or_null(entry.to)},
                     {"objective", objective_to_json(entry.objective)}});
  }
  return {{"placement", placement_to_json(graph, solution.placement)},
          {"objective", objective_to_json(solution.objective)},
          {"trace", std::move(trace)},
          {"centrality_delta", centrality_delta_to_json(solution.centrality_delta)},
          {"converged", solution.converged}};
}

SearchConfig search_config_from_json(const Json& document) {
  static const std::set<std::string, std::less<>> kKeys = {"candidate_pool", "top_m", "max_iterations", "restarts",
                                                           "seed", "threads", "ladder"};
  if (!document.is_object()) throw Error(ErrorCode::kInvalidConfig, "search config must be an object");
  SearchConfig config;
  try {
    for (const auto& [key, value] : document.items()) {
      if (!kKeys.contains(key)) throw Error(ErrorCode::kInvalidConfig, "unknown search config key '" + key + "'");
    }
    if (document.contains("candidate_pool")) {
      const auto pool = document.at("candidate_pool").get<std::string>();
      if (pool == "all") config.candidate_pool = CandidatePool::kAllVertices;
      else if (pool == "top-m") config.candidate_pool = CandidatePool::kTopByCloseness;
      else throw Error(ErrorCode::kInvalidConfig, "candidate_pool must be 'all' or 'top-m'");
    }
    auto non_negative = [&](const char* key) -> std::size_t {
      const auto value = document.at(key).get<std::int64_t>();
      if (value < 0) throw Error(ErrorCode::kInvalidConfig, std::string(key) + " must be >= 0");
      return static_cast<std::size_t>(value);
    };
    if (document.contains("top_m")) config.top_m = non_negative("top_m");
    if (document.contains("max_iterations")) config.max_iterations = non_negative("max_iterations");
    if (document.contains("restarts")) config.restarts = non_negative("restarts");
    if (document.contains("threads")) config.threads = non_negative("threads");
    if (document.contains("seed")) config.seed = document.at("seed").get<std::uint64_t>();
    if (document.contains("ladder")) config.ladder = ladder_from_json(document.at("ladder"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("search config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidConfig) throw;
    throw Error(ErrorCode::kInvalidConfig, e.what());
  }
  config.validate();
  return config;
}

Json parse_toml_subset(std::string_view text) {
  Json root = Json::object();
  Json* table = &root;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const std::string line = trim(strip_comment(std::string(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start))));
    ++line_number;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') toml_fail(line_number, "malformed table header");
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (name.empty()) toml_fail(line_number, "empty table name");
      if (root.contains(name)) toml_fail(line_number, "table '" + name + "' defined twice");
      root[name] = Json::object();
      table = &root[name];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) toml_fail(line_number, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) toml_fail(line_number, "missing key");
    if (table->contains(key)) toml_fail(line_number, "key '" + key + "' defined twice");
    (*table)[key] = toml_value(trim(std::string_view(line).substr(eq + 1)), line_number);
  }
  return root;
}

SearchConfig load_search_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (path.extension() == ".toml") return search_config_from_json(parse_toml_subset(text));
  return search_config_from_json(parse_json(text));
}

Json geojson_export(const StreetGraph& graph, const InconsistencyReport& report, const PoiPlacement* placement) {
  Json features = Json::array();
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    const GeoPoint p = graph.point(v);
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}}},
                        {"properties", {{"kind", "vertex"}, {"id", graph.id(v).value}, {"degree", report.degree_of(graph.id(v))}}}});
  }
  if (placement) {
    for (const Poi& poi : placement->pois) {
      const GeoPoint p = graph.point(graph.index_of(poi.anchor));
      features.push_back({{"type", "Feature"},
                          {"geometry", {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}}},
                          {"properties", {{"kind", "poi"}, {"id", poi.id}, {"category", poi.category},
                                          {"vertex", poi.anchor.value}}}});
    }
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

std::string indicator_csv(const StreetGraph& graph, std::span<const Indicator> indicators, std::size_t threads) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<double>> columns;
  for (const Indicator indicator : indicators) {
    switch (indicator) {
      case Indicator::kCloseness: columns.push_back(closeness_all(graph, threads)); break;
      case Indicator::kBetweenness: columns.push_back(betweenness(graph, threads)); break;
      case Indicator::kAccessibility: {
        std::vector<double> values(n);
        for (VertexIndex v = 0; v < n; ++v) values[v] = accessibility(graph, graph.id(v), kDefaultAccessibilitySteps);
        columns.push_back(std::move(values));
        break;
      }
    }
  }
  std::string out = "vertex_id,indicator,value\n";
  for (VertexIndex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < indicators.size(); ++i) {
      out += std::to_string(graph.id(v).value);
      out += ',';
      out += indicator_name(indicators[i]);
      out += ',';
      out += format_double(columns[i][v]);
      out += '\n';
    }
  }
  return out;
}

std::vector<Indicator> parse_indicator_list(std::string_view text) {
  if (text.empty()) return {Indicator::kCloseness, Indicator::kBetweenness, Indicator::kAccessibility};
  std::vector<Indicator> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string name = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const Indicator indicator = parse_indicator(name);
    if (std::find(out.begin(), out.end(), indicator) == out.end()) out.push_back(indicator);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace gridsight
