#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gridsight/geo.hpp"

namespace gridsight {

/// External vertex identifier (the OSM node id for ingested graphs).
struct VertexId {
  std::uint64_t value = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// Dense position of a vertex inside a StreetGraph. Index order equals ascending VertexId order.
using VertexIndex = std::uint32_t;

/// Sorted, duplicate-free collection of vertex ids.
using VertexSet = std::vector<VertexId>;

enum class Profile { kDrive, kWalk };

std::string_view profile_name(Profile profile) noexcept;
/// Throws Error(kInvalidInput) for anything other than "drive" or "walk".
Profile parse_profile(std::string_view name);

struct Edge {
  VertexIndex from = 0;
  VertexIndex to = 0;
  double length_m = 0.0;
  bool directed = false;
};

struct Arc {
  VertexIndex target = 0;
  double length_m = 0.0;
};

}  // namespace gridsight

template <>
struct std::hash<gridsight::VertexId> {
  std::size_t operator()(const gridsight::VertexId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

namespace gridsight {

/// Immutable geometric street graph: intersections are vertices, street segments are edges.
///
/// Undirected edges appear as two arcs in the outgoing adjacency; directed edges as one.
/// Safe to share across threads once built.
class StreetGraph {
 public:
  std::size_t vertex_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  VertexId id(VertexIndex index) const { return ids_[index]; }
  GeoPoint point(VertexIndex index) const { return points_[index]; }
  std::span<const VertexId> ids() const noexcept { return ids_; }

  std::optional<VertexIndex> find(VertexId id) const;
  /// Throws Error(kInvalidVertex) when `id` is not a vertex.
  VertexIndex index_of(VertexId id) const;
  bool contains(VertexId id) const { return find(id).has_value(); }

  std::span<const Arc> out_arcs(VertexIndex index) const {
    return {arcs_.data() + offsets_[index], arcs_.data() + offsets_[index + 1]};
  }
  std::span<const Edge> edges() const noexcept { return edges_; }

  Profile profile() const noexcept { return profile_; }
  Metric metric() const noexcept { return metric_; }
  bool has_directed_edges() const noexcept { return has_directed_; }

  /// Straight-line distance between two vertices under the graph's metric.
  double euclidean(VertexIndex a, VertexIndex b) const {
    return metric_distance(metric_, points_[a], points_[b]);
  }

  /// Weakly-connected component label per vertex index; labels are dense from 0.
  std::vector<std::uint32_t> component_labels() const;

 private:
  friend class GraphBuilder;

  Profile profile_ = Profile::kDrive;
  Metric metric_ = Metric::kHaversine;
  bool has_directed_ = false;
  std::vector<VertexId> ids_;
  std::vector<GeoPoint> points_;
  std::unordered_map<VertexId, VertexIndex> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

/// Accumulates vertices and edges, then freezes them into a StreetGraph.
///
/// Self-loops are dropped. Among parallel edges of the same directedness only the
/// shortest is kept. Edge lengths must be positive and no shorter than the straight
/// line between their endpoints (within kDistanceEpsilon).
class GraphBuilder {
 public:
  explicit GraphBuilder(Profile profile, Metric metric = Metric::kHaversine);

  void add_vertex(VertexId id, GeoPoint point);
  void add_edge(VertexId from, VertexId to, double length_m, bool directed);
  /// Edge whose length is the straight-line distance between its endpoints.
  void add_straight_edge(VertexId from, VertexId to, bool directed = false);

  bool has_vertex(VertexId id) const { return points_.contains(id); }
  std::size_t vertex_count() const noexcept { return points_.size(); }

  /// Throws Error(kEmptyGraph) when no vertex was added.
  StreetGraph build() const;

 private:
  struct PendingEdge {
    VertexId from;
    VertexId to;
    double length_m;
    bool directed;
  };

  Profile profile_;
  Metric metric_;
  std::unordered_map<VertexId, GeoPoint> points_;
  std::vector<PendingEdge> edges_;
};

/// Vertex minimizing the metric distance to `point`; ties go to the smallest id.
/// Throws Error(kEmptyGraph) on an empty graph.
VertexId nearest_vertex(const StreetGraph& graph, GeoPoint point);

}  // namespace gridsight
