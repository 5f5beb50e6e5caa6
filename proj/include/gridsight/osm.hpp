#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridsight/street_graph.hpp"

namespace gridsight::osm {

struct RawNode {
  std::uint64_t id = 0;
  double lat = 0.0;
  double lon = 0.0;
};

struct RawWay {
  std::uint64_t id = 0;
  std::vector<std::uint64_t> node_refs;
  std::map<std::string, std::string> tags;

  /// Empty string when the tag is absent.
  std::string_view tag(std::string_view key) const;
};

struct ParseDiagnostics {
  std::size_t malformed_nodes = 0;  // missing/unparseable id, coordinates out of range
  std::size_t duplicate_nodes = 0;
  std::size_t malformed_ways = 0;   // missing id or unparseable nd ref
  std::size_t dropped_ways = 0;     // fewer than two refs, or a ref to an unknown node
};

struct Extract {
  std::vector<RawNode> nodes;
  std::vector<RawWay> ways;
  ParseDiagnostics diagnostics;
};

/// Reads OSM XML 0.6. Throws ParseError (with byte offset) on non-XML input and
/// Error(kEmptyExtract) when no valid node survives.
Extract parse_osm_xml(std::string_view document);

struct TravelProfile {
  Profile name = Profile::kDrive;
  std::set<std::string, std::less<>> allowed_highway_tags;
  bool oneway_respected = true;

  static TravelProfile drive();
  static TravelProfile walk();
  static TravelProfile of(Profile profile);
};

enum class WayDirection { kBoth, kForward, kBackward };

struct ProfiledWay {
  RawWay way;
  WayDirection direction = WayDirection::kBoth;
};

/// Oneway semantics for the drive profile: oneway=yes|true|1 and junction=roundabout
/// mean forward, oneway=-1|reverse means backward, oneway=no overrides a roundabout.
WayDirection resolve_direction(const RawWay& way);

std::vector<ProfiledWay> filter_profile(std::span<const RawWay> ways, const TravelProfile& profile);

/// Splits ways at shared nodes and way endpoints; interior degree-2 nodes are folded
/// into the edge, whose length is the sum of the haversine lengths of its pieces.
/// Throws Error(kEmptyGraph) when nothing survives.
StreetGraph build_street_graph(std::span<const RawNode> nodes, std::span<const ProfiledWay> ways,
                               const TravelProfile& profile);

/// parse -> filter -> build.
StreetGraph ingest(std::string_view document, Profile profile);

}  // namespace gridsight::osm
