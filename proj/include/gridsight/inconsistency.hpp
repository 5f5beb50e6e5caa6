#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridsight/street_graph.hpp"

namespace gridsight {

struct Poi {
  std::string id;
  std::string category;
  VertexId anchor;

  friend bool operator==(const Poi&, const Poi&) = default;
};

struct PoiPlacement {
  std::vector<Poi> pois;

  const Poi* find(std::string_view poi_id) const;
  std::size_t size() const noexcept { return pois.size(); }
  bool empty() const noexcept { return pois.empty(); }

  friend bool operator==(const PoiPlacement&, const PoiPlacement&) = default;
};

/// Throws Error(kInvalidInput) for an empty placement or duplicate POI ids,
/// Error(kInvalidVertex) for an anchor missing from the graph.
void validate_placement(const StreetGraph& graph, const PoiPlacement& placement);

struct ScaleLadder {
  std::vector<double> radii{400.0, 800.0, 1600.0};
  double tau = 1.5;

  /// Throws Error(kInvalidInput) unless radii are non-empty, positive, strictly ascending and tau >= 1.
  void validate() const;
  double max_radius() const { return radii.back(); }
};

struct VertexDegree {
  VertexId vertex;
  std::uint32_t degree = 0;

  friend bool operator==(const VertexDegree&, const VertexDegree&) = default;
};

struct PairResult {
  std::string poi_id;
  double radius_m = 0.0;
  VertexSet vertices;

  friend bool operator==(const PairResult&, const PairResult&) = default;
};

struct ReportSummary {
  std::size_t inconsistent_vertices = 0;
  std::size_t degree_sum = 0;
  std::uint32_t degree_max = 0;

  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct InconsistencyReport {
  std::vector<VertexDegree> degrees;  // every vertex, ascending id
  std::vector<PairResult> pairs;      // placement order, then ascending radius
  ReportSummary summary;

  std::uint32_t degree_of(VertexId vertex) const;

  friend bool operator==(const InconsistencyReport&, const InconsistencyReport&) = default;
};

/// E(p, r): vertices within straight-line distance r of the anchor.
VertexSet euclidean_reach_set(const StreetGraph& graph, VertexId anchor, double radius_m);

/// N(p, d): vertices within network distance d of the anchor (outbound along arcs).
VertexSet network_reach_set(const StreetGraph& graph, VertexId anchor, double budget_m);

/// E(p, r) \ N(p, tau * r): euclidean-close but not reachable within the detour budget.
VertexSet inconsistent_set(const StreetGraph& graph, VertexId anchor, double radius_m, double tau);

/// Network distance over straight-line distance. Empty when `vertex` is unreachable or
/// shares the anchor's coordinates. Throws Error(kUndefinedRatio) when vertex == anchor.
std::optional<double> detour_index(const StreetGraph& graph, VertexId vertex, VertexId anchor);

/// detour_index of every vertex against one anchor, indexed by VertexIndex, from a single
/// Dijkstra pass. The anchor's own slot is empty.
std::vector<std::optional<double>> detour_indices(const StreetGraph& graph, VertexId anchor);

/// Per-anchor building block shared by `analyze` and the optimizer.
struct AnchorProfile {
  VertexIndex anchor = 0;
  /// One ascending index list per ladder radius.
  std::vector<std::vector<VertexIndex>> inconsistent;
  /// Dense network distances from the anchor; populated only with `full_distances`.
  std::vector<double> network;
};

/// With `full_distances`, Dijkstra runs unbounded and keeps its distances;
/// otherwise it stops at tau * max radius.
AnchorProfile profile_anchor(const StreetGraph& graph, VertexIndex anchor, const ScaleLadder& ladder,
                             bool full_distances);

/// Report assembled from one profile per POI, in placement order.
InconsistencyReport assemble_report(const StreetGraph& graph, const PoiPlacement& placement,
                                    const ScaleLadder& ladder, std::span<const AnchorProfile* const> profiles);

/// Full inconsistency analysis; POIs are profiled in parallel (`threads` = 0 for auto).
InconsistencyReport analyze(const StreetGraph& graph, const PoiPlacement& placement, const ScaleLadder& ladder,
                            std::size_t threads = 0);

}  // namespace gridsight
