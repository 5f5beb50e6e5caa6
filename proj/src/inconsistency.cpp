#include "gridsight/inconsistency.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gridsight/error.hpp"
#include "gridsight/parallel.hpp"
#include "gridsight/shortest_path.hpp"

namespace gridsight {

namespace {

VertexSet to_ids(const StreetGraph& graph, std::span<const VertexIndex> indices) {
  VertexSet out;
  out.reserve(indices.size());
  for (const VertexIndex v : indices) out.push_back(graph.id(v));
  return out;
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + " must be a positive finite number of meters");
  }
}

}  // namespace

const Poi* PoiPlacement::find(std::string_view poi_id) const {
  for (const Poi& p : pois) {
    if (p.id == poi_id) return &p;
  }
  return nullptr;
}

void validate_placement(const StreetGraph& graph, const PoiPlacement& placement) {
  if (placement.empty()) throw Error(ErrorCode::kInvalidInput, "placement has no points of interest");
  std::set<std::string_view> seen;
  for (const Poi& p : placement.pois) {
    if (!seen.insert(p.id).second) throw Error(ErrorCode::kInvalidInput, "duplicate POI id '" + p.id + "'");
    graph.index_of(p.anchor);
  }
}

void ScaleLadder::validate() const {
  if (radii.empty()) throw Error(ErrorCode::kInvalidInput, "scale ladder needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw Error(ErrorCode::kInvalidInput, "scale ladder radii must be positive");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw Error(ErrorCode::kInvalidInput, "scale ladder radii must be strictly ascending");
    }
  }
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw Error(ErrorCode::kInvalidInput, "tau must be >= 1");
}

std::uint32_t InconsistencyReport::degree_of(VertexId vertex) const {
  const auto it = std::lower_bound(degrees.begin(), degrees.end(), vertex,
                                   [](const VertexDegree& d, VertexId v) { return d.vertex < v; });
  if (it == degrees.end() || it->vertex != vertex) {
    throw Error(ErrorCode::kInvalidVertex, "vertex " + std::to_string(vertex.value) + " is not in the report");
  }
  return it->degree;
}

VertexSet euclidean_reach_set(const StreetGraph& graph, VertexId anchor, double radius_m) {
  const VertexIndex a = graph.index_of(anchor);
  require_positive(radius_m, "radius");
  VertexSet out;
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (v == a || within(graph.euclidean(a, v), radius_m)) out.push_back(graph.id(v));
  }
  return out;
}

VertexSet network_reach_set(const StreetGraph& graph, VertexId anchor, double budget_m) {
  const VertexIndex a = graph.index_of(anchor);
  require_positive(budget_m, "network budget");
  const auto dist = dense_distances(graph, std::span(&a, 1), budget_m);
  VertexSet out;
  for (VertexIndex v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnbounded) out.push_back(graph.id(v));
  }
  return out;
}

VertexSet inconsistent_set(const StreetGraph& graph, VertexId anchor, double radius_m, double tau) {
  if (!(tau >= 1.0)) throw Error(ErrorCode::kInvalidInput, "tau must be >= 1");
  const VertexSet euclid = euclidean_reach_set(graph, anchor, radius_m);
  const VertexSet network = network_reach_set(graph, anchor, tau * radius_m);
  VertexSet out;
  std::set_difference(euclid.begin(), euclid.end(), network.begin(), network.end(), std::back_inserter(out));
  return out;
}

std::optional<double> detour_index(const StreetGraph& graph, VertexId vertex, VertexId anchor) {
  const VertexIndex v = graph.index_of(vertex);
  const VertexIndex a = graph.index_of(anchor);
  if (v == a) throw Error(ErrorCode::kUndefinedRatio, "detour index of a vertex to itself is 0/0");
  const double straight = graph.euclidean(v, a);
  if (straight == 0.0) return std::nullopt;
  const auto dist = dense_distances(graph, std::span(&a, 1));
  if (dist[v] == kUnbounded) return std::nullopt;
  return dist[v] / straight;
}

std::vector<std::optional<double>> detour_indices(const StreetGraph& graph, VertexId anchor) {
  const VertexIndex a = graph.index_of(anchor);
  const auto dist = dense_distances(graph, std::span(&a, 1));
  std::vector<std::optional<double>> out(graph.vertex_count());
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    const double straight = graph.euclidean(v, a);
    if (v == a || straight == 0.0 || dist[v] == kUnbounded) continue;
    out[v] = dist[v] / straight;
  }
  return out;
}

AnchorProfile profile_anchor(const StreetGraph& graph, VertexIndex anchor, const ScaleLadder& ladder,
                             bool full_distances) {
  AnchorProfile profile;
  profile.anchor = anchor;
  std::vector<double> network =
      dense_distances(graph, std::span(&anchor, 1), full_distances ? kUnbounded : ladder.tau * ladder.max_radius());
  profile.inconsistent.resize(ladder.radii.size());
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (v == anchor) continue;
    const double straight = graph.euclidean(anchor, v);
    for (std::size_t r = 0; r < ladder.radii.size(); ++r) {
      const double radius = ladder.radii[r];
      if (within(straight, radius) && !within(network[v], ladder.tau * radius)) {
        profile.inconsistent[r].push_back(v);
      }
    }
  }
  if (full_distances) profile.network = std::move(network);
  return profile;
}

InconsistencyReport assemble_report(const StreetGraph& graph, const PoiPlacement& placement,
                                    const ScaleLadder& ladder, std::span<const AnchorProfile* const> profiles) {
  InconsistencyReport report;
  std::vector<std::uint32_t> degree(graph.vertex_count(), 0);
  report.pairs.reserve(placement.size() * ladder.radii.size());
  for (std::size_t p = 0; p < placement.size(); ++p) {
    const AnchorProfile& profile = *profiles[p];
    for (std::size_t r = 0; r < ladder.radii.size(); ++r) {
      for (const VertexIndex v : profile.inconsistent[r]) ++degree[v];
      report.pairs.push_back({placement.pois[p].id, ladder.radii[r], to_ids(graph, profile.inconsistent[r])});
    }
  }
  report.degrees.reserve(graph.vertex_count());
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    report.degrees.push_back({graph.id(v), degree[v]});
    if (degree[v] > 0) ++report.summary.inconsistent_vertices;
    report.summary.degree_sum += degree[v];
    report.summary.degree_max = std::max(report.summary.degree_max, degree[v]);
  }
  return report;
}

InconsistencyReport analyze(const StreetGraph& graph, const PoiPlacement& placement, const ScaleLadder& ladder,
                            std::size_t threads) {
  validate_placement(graph, placement);
  ladder.validate();
  std::vector<AnchorProfile> profiles(placement.size());
  parallel_for(placement.size(), threads, [&](std::size_t p) {
    profiles[p] = profile_anchor(graph, graph.index_of(placement.pois[p].anchor), ladder, false);
  });
  std::vector<const AnchorProfile*> views;
  views.reserve(profiles.size());
  for (const auto& profile : profiles) views.push_back(&profile);
  return assemble_report(graph, placement, ladder, views);
}

}  // namespace gridsight
