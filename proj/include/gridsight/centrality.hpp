#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gridsight/inconsistency.hpp"
#include "gridsight/street_graph.hpp"

namespace gridsight {

enum class Indicator { kCloseness, kBetweenness, kAccessibility };

std::string_view indicator_name(Indicator indicator) noexcept;
/// Throws Error(kInvalidInput) for an unknown name.
Indicator parse_indicator(std::string_view name);

inline constexpr int kDefaultAccessibilitySteps = 3;

/// Wasserman-Faust closeness: ((k - 1) / sum of distances) * ((k - 1) / (n - 1)) where k
/// counts the vertices reachable from `vertex` (itself included). 0 when nothing is reachable.
double closeness(const StreetGraph& graph, VertexId vertex);

/// Closeness for every vertex, indexed by VertexIndex.
std::vector<double> closeness_all(const StreetGraph& graph, std::size_t threads = 0);

/// Exact length-weighted betweenness (Brandes accumulation), endpoints excluded, indexed
/// by VertexIndex. Values are halved when the graph has no directed edge.
std::vector<double> betweenness(const StreetGraph& graph, std::size_t threads = 0);

/// exp(H) for the Shannon entropy H of the `steps`-step degree-uniform random walk out of
/// `vertex`. A walker with no outgoing arc stays where it is. Throws Error(kInvalidInput) if steps < 1.
double accessibility(const StreetGraph& graph, VertexId vertex, int steps = kDefaultAccessibilitySteps);

struct AnchorChange {
  std::string poi_id;
  VertexId from;
  VertexId to;
  double before = 0.0;
  double after = 0.0;
};

struct CentralityDelta {
  Indicator indicator = Indicator::kCloseness;
  /// Indicator value at each POI's anchor, keyed by POI id in placement order.
  std::vector<std::pair<std::string, double>> before;
  std::vector<std::pair<std::string, double>> after;
  /// Mean over POIs of (after - before).
  double mean_change = 0.0;
  std::vector<AnchorChange> poi_anchor_changes;
};

/// Throws Error(kInvalidInput) when the placements do not carry the same POI ids.
CentralityDelta compare_placements(const StreetGraph& graph, const PoiPlacement& before, const PoiPlacement& after,
                                   Indicator indicator);
CentralityDelta compare_placements(const StreetGraph& graph, const PoiPlacement& before, const PoiPlacement& after,
                                   std::string_view indicator);

}  // namespace gridsight
