#include "gridsight/osm.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "gridsight/error.hpp"
#include "xml_reader.hpp"

namespace gridsight::osm {

namespace {

const std::vector<std::string> kDriveTags = {
    "motorway",      "motorway_link", "trunk",         "trunk_link",   "primary",
    "primary_link",  "secondary",     "secondary_link", "tertiary",    "tertiary_link",
    "unclassified",  "residential",   "living_street",
};

const std::vector<std::string> kWalkOnlyTags = {"footway", "pedestrian", "path", "steps", "track"};

template <class T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

const std::string* find_attribute(const std::vector<detail::XmlAttribute>& attributes, std::string_view name) {
  for (const auto& a : attributes) {
    if (a.name == name) return &a.value;
  }
  return nullptr;
}

class OsmHandler final : public detail::XmlHandler {
 public:
  void start_element(std::string_view name, const std::vector<detail::XmlAttribute>& attributes,
                     std::size_t offset) override {
    ++depth_;
    if (depth_ == 1) {
      if (name != "osm") throw ParseError(offset, "root element must be <osm>");
      return;
    }
    if (depth_ == 2) {
      if (name == "node") read_node(attributes);
      else if (name == "way") begin_way(attributes);
      return;
    }
    if (depth_ == 3 && in_way_) {
      if (name == "nd") {
        const std::string* ref = find_attribute(attributes, "ref");
        const auto value = ref ? parse_number<std::uint64_t>(*ref) : std::nullopt;
        if (value) way_.node_refs.push_back(*value);
        else way_broken_ = true;
      } else if (name == "tag") {
        const std::string* k = find_attribute(attributes, "k");
        const std::string* v = find_attribute(attributes, "v");
        if (k && v) way_.tags[*k] = *v;
      }
    }
  }

  void end_element(std::string_view name) override {
    if (depth_ == 2 && name == "way" && in_way_) {
      if (way_broken_) ++extract_.diagnostics.malformed_ways;
      else extract_.ways.push_back(std::move(way_));
      in_way_ = false;
    }
    --depth_;
  }

  Extract finish() && {
    std::unordered_set<std::uint64_t> known;
    known.reserve(extract_.nodes.size());
    for (const RawNode& n : extract_.nodes) known.insert(n.id);
    std::erase_if(extract_.ways, [&](const RawWay& way) {
      const bool resolvable = way.node_refs.size() >= 2 &&
                              std::all_of(way.node_refs.begin(), way.node_refs.end(),
                                          [&](std::uint64_t ref) { return known.contains(ref); });
      if (!resolvable) ++extract_.diagnostics.dropped_ways;
      return !resolvable;
    });
    return std::move(extract_);
  }

 private:
  void read_node(const std::vector<detail::XmlAttribute>& attributes) {
    const std::string* id = find_attribute(attributes, "id");
    const std::string* lat = find_attribute(attributes, "lat");
    const std::string* lon = find_attribute(attributes, "lon");
    const auto id_value = id ? parse_number<std::uint64_t>(*id) : std::nullopt;
    const auto lat_value = lat ? parse_number<double>(*lat) : std::nullopt;
    const auto lon_value = lon ? parse_number<double>(*lon) : std::nullopt;
    if (!id_value || !lat_value || !lon_value) {
      ++extract_.diagnostics.malformed_nodes;
      return;
    }
    const RawNode node{*id_value, *lat_value, *lon_value};
    if (!is_valid_geographic({node.lat, node.lon})) {
      ++extract_.diagnostics.malformed_nodes;
      return;
    }
    if (!seen_nodes_.insert(node.id).second) {
      ++extract_.diagnostics.duplicate_nodes;
      return;
    }
    extract_.nodes.push_back(node);
  }

  void begin_way(const std::vector<detail::XmlAttribute>& attributes) {
    in_way_ = true;
    way_ = RawWay{};
    const std::string* id = find_attribute(attributes, "id");
    const auto id_value = id ? parse_number<std::uint64_t>(*id) : std::nullopt;
    way_broken_ = !id_value;
    if (id_value) way_.id = *id_value;
  }

  int depth_ = 0;
  bool in_way_ = false;
  bool way_broken_ = false;
  RawWay way_;
  std::unordered_set<std::uint64_t> seen_nodes_;
  Extract extract_;
};

}  // namespace

std::string_view RawWay::tag(std::string_view key) const {
  const auto it = tags.find(std::string(key));
  return it == tags.end() ? std::string_view{} : std::string_view{it->second};
}

Extract parse_osm_xml(std::string_view document) {
  OsmHandler handler;
  detail::scan_xml(document, handler);
  Extract extract = std::move(handler).finish();
  if (extract.nodes.empty()) throw Error(ErrorCode::kEmptyExtract, "extract contains no valid nodes");
  return extract;
}

TravelProfile TravelProfile::drive() {
  TravelProfile p;
  p.name = Profile::kDrive;
  p.allowed_highway_tags.insert(kDriveTags.begin(), kDriveTags.end());
  p.oneway_respected = true;
  return p;
}

TravelProfile TravelProfile::walk() {
  TravelProfile p;
  p.name = Profile::kWalk;
  for (const auto& tag : kDriveTags) {
    if (!tag.starts_with("motorway") && !tag.starts_with("trunk")) p.allowed_highway_tags.insert(tag);
  }
  p.allowed_highway_tags.insert(kWalkOnlyTags.begin(), kWalkOnlyTags.end());
  p.oneway_respected = false;
  return p;
}

TravelProfile TravelProfile::of(Profile profile) { return profile == Profile::kWalk ? walk() : drive(); }

WayDirection resolve_direction(const RawWay& way) {
  const std::string_view oneway = way.tag("oneway");
  if (oneway == "yes" || oneway == "true" || oneway == "1") return WayDirection::kForward;
  if (oneway == "-1" || oneway == "reverse") return WayDirection::kBackward;
  if (oneway == "no" || oneway == "false" || oneway == "0") return WayDirection::kBoth;
  if (way.tag("junction") == "roundabout") return WayDirection::kForward;
  return WayDirection::kBoth;
}

std::vector<ProfiledWay> filter_profile(std::span<const RawWay> ways, const TravelProfile& profile) {
  std::vector<ProfiledWay> out;
  for (const RawWay& way : ways) {
    const std::string_view highway = way.tag("highway");
    if (highway.empty() || !profile.allowed_highway_tags.contains(highway)) continue;
    out.push_back({way, profile.oneway_respected ? resolve_direction(way) : WayDirection::kBoth});
  }
  return out;
}

StreetGraph build_street_graph(std::span<const RawNode> nodes, std::span<const ProfiledWay> ways,
                               const TravelProfile& profile) {
  std::unordered_map<std::uint64_t, GeoPoint> coords;
  coords.reserve(nodes.size());
  for (const RawNode& n : nodes) coords.emplace(n.id, GeoPoint{n.lat, n.lon});

  // Consecutive repeats carry no geometry.
  std::vector<std::vector<std::uint64_t>> refs;
  refs.reserve(ways.size());
  for (const ProfiledWay& pw : ways) {
    std::vector<std::uint64_t> r;
    for (const std::uint64_t id : pw.way.node_refs) {
      if (!coords.contains(id)) {
        throw Error(ErrorCode::kInvalidInput, "way " + std::to_string(pw.way.id) + " references unknown node " +
                                                  std::to_string(id));
      }
      if (r.empty() || r.back() != id) r.push_back(id);
    }
    refs.push_back(std::move(r));
  }

  std::unordered_map<std::uint64_t, int> uses;
  std::unordered_set<std::uint64_t> junctions;
  for (const auto& r : refs) {
    if (r.size() < 2) continue;
    for (const std::uint64_t id : r) {
      if (++uses[id] >= 2) junctions.insert(id);
    }
    junctions.insert(r.front());
    junctions.insert(r.back());
  }

  GraphBuilder builder(profile.name, Metric::kHaversine);
  auto ensure_vertex = [&](std::uint64_t id) {
    if (!builder.has_vertex(VertexId{id})) builder.add_vertex(VertexId{id}, coords.at(id));
  };
  auto emit = [&](std::uint64_t a, std::uint64_t b, double length, WayDirection direction) {
    if (a == b || length <= 0.0) return;
    ensure_vertex(a);
    ensure_vertex(b);
    switch (direction) {
      case WayDirection::kBoth: builder.add_edge(VertexId{a}, VertexId{b}, length, false); break;
      case WayDirection::kForward: builder.add_edge(VertexId{a}, VertexId{b}, length, true); break;
      case WayDirection::kBackward: builder.add_edge(VertexId{b}, VertexId{a}, length, true); break;
    }
  };

  for (std::size_t w = 0; w < refs.size(); ++w) {
    const auto& r = refs[w];
    if (r.size() < 2) continue;
    const WayDirection direction = ways[w].direction;
    std::size_t start = 0;
    double length = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) {
      length += haversine_distance(coords.at(r[i - 1]), coords.at(r[i]));
      if (!junctions.contains(r[i])) continue;
      if (r[start] == r[i] && i - start >= 2) {
        // Closed chain: keep its middle node so the loop stays reachable.
        const std::size_t mid = start + (i - start) / 2;
        double first = 0.0;
        double second = 0.0;
        for (std::size_t k = start + 1; k <= i; ++k) {
          (k <= mid ? first : second) += haversine_distance(coords.at(r[k - 1]), coords.at(r[k]));
        }
        emit(r[start], r[mid], first, direction);
        emit(r[mid], r[i], second, direction);
      } else {
        emit(r[start], r[i], length, direction);
      }
      start = i;
      length = 0.0;
    }
  }

  if (builder.vertex_count() == 0) throw Error(ErrorCode::kEmptyGraph, "no street segments survived filtering");
  return builder.build();
}

StreetGraph ingest(std::string_view document, Profile profile) {
  const Extract extract = parse_osm_xml(document);
  const TravelProfile travel = TravelProfile::of(profile);
  const auto ways = filter_profile(extract.ways, travel);
  return build_street_graph(extract.nodes, ways, travel);
}

}  // namespace gridsight::osm
