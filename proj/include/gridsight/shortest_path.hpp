#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gridsight/street_graph.hpp"

namespace gridsight {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Network distances from a source set. Unreachable vertices are absent.
class DistanceMap {
 public:
  struct Entry {
    VertexId vertex;
    double meters;
  };

  DistanceMap(std::vector<VertexId> sources, std::optional<double> cutoff, std::vector<Entry> entries);

  std::span<const VertexId> sources() const noexcept { return sources_; }
  std::optional<double> cutoff() const noexcept { return cutoff_; }

  /// Entries sorted by vertex id.
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::optional<double> find(VertexId vertex) const;
  bool contains(VertexId vertex) const { return find(vertex).has_value(); }
  VertexSet reached() const;

 private:
  std::vector<VertexId> sources_;
  std::optional<double> cutoff_;
  std::vector<Entry> entries_;
};

/// Exact multi-source Dijkstra over outgoing arcs. Throws Error(kInvalidVertex) for an
/// unknown source and Error(kInvalidInput) for an empty source set.
DistanceMap shortest_path_distances(const StreetGraph& graph, std::span<const VertexId> sources,
                                    std::optional<double> cutoff = std::nullopt);

/// Dense variant indexed by VertexIndex. Unreached vertices hold kUnbounded.
/// The heap orders by (distance, vertex index) so results never depend on tie order.
std::vector<double> dense_distances(const StreetGraph& graph, std::span<const VertexIndex> sources,
                                    double cutoff = kUnbounded);

}  // namespace gridsight
