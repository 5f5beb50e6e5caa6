#include "gridsight/street_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "gridsight/error.hpp"

namespace gridsight {

std::string_view profile_name(Profile profile) noexcept {
  return profile == Profile::kWalk ? "walk" : "drive";
}

Profile parse_profile(std::string_view name) {
  if (name == "drive") return Profile::kDrive;
  if (name == "walk") return Profile::kWalk;
  throw Error(ErrorCode::kInvalidInput, "unknown profile '" + std::string(name) + "'");
}

std::optional<VertexIndex> StreetGraph::find(VertexId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexIndex StreetGraph::index_of(VertexId id) const {
  if (const auto index = find(id)) return *index;
  throw Error(ErrorCode::kInvalidVertex, "vertex " + std::to_string(id.value) + " is not in the graph");
}

std::vector<std::uint32_t> StreetGraph::component_labels() const {
  const std::size_t n = vertex_count();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0U);
  auto root = [&](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const Edge& e : edges_) {
    const auto a = root(e.from);
    const auto b = root(e.to);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> labels(n);
  std::vector<std::uint32_t> dense(n, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto r = root(v);
    if (dense[r] == UINT32_MAX) dense[r] = next++;
    labels[v] = dense[r];
  }
  return labels;
}

GraphBuilder::GraphBuilder(Profile profile, Metric metric) : profile_(profile), metric_(metric) {}

void GraphBuilder::add_vertex(VertexId id, GeoPoint point) {
  if (!std::isfinite(point.lat) || !std::isfinite(point.lon)) {
    throw Error(ErrorCode::kInvalidInput, "vertex " + std::to_string(id.value) + " has non-finite coordinates");
  }
  if (metric_ == Metric::kHaversine && !is_valid_geographic(point)) {
    throw Error(ErrorCode::kInvalidInput, "vertex " + std::to_string(id.value) + " has out-of-range coordinates");
  }
  if (!points_.emplace(id, point).second) {
    throw Error(ErrorCode::kInvalidInput, "duplicate vertex id " + std::to_string(id.value));
  }
}

void GraphBuilder::add_edge(VertexId from, VertexId to, double length_m, bool directed) {
  const auto a = points_.find(from);
  const auto b = points_.find(to);
  if (a == points_.end() || b == points_.end()) {
    const VertexId missing = a == points_.end() ? from : to;
    throw Error(ErrorCode::kInvalidVertex, "edge endpoint " + std::to_string(missing.value) + " is not a vertex");
  }
  if (!std::isfinite(length_m) || length_m <= 0.0) {
    throw Error(ErrorCode::kInvalidInput, "edge " + std::to_string(from.value) + "-" + std::to_string(to.value) +
                                              " must have a positive length");
  }
  if (from == to) return;
  const double chord = metric_distance(metric_, a->second, b->second);
  if (length_m < chord - kDistanceEpsilon) {
    throw Error(ErrorCode::kInvalidInput, "edge " + std::to_string(from.value) + "-" + std::to_string(to.value) +
                                              " is shorter than the straight line between its endpoints");
  }
  edges_.push_back({from, to, length_m, directed});
}

void GraphBuilder::add_straight_edge(VertexId from, VertexId to, bool directed) {
  const auto a = points_.find(from);
  const auto b = points_.find(to);
  if (a == points_.end() || b == points_.end()) {
    const VertexId missing = a == points_.end() ? from : to;
    throw Error(ErrorCode::kInvalidVertex, "edge endpoint " + std::to_string(missing.value) + " is not a vertex");
  }
  add_edge(from, to, metric_distance(metric_, a->second, b->second), directed);
}

StreetGraph GraphBuilder::build() const {
  if (points_.empty()) throw Error(ErrorCode::kEmptyGraph, "graph has no vertices");

  StreetGraph graph;
  graph.profile_ = profile_;
  graph.metric_ = metric_;

  std::vector<std::pair<VertexId, GeoPoint>> sorted(points_.begin(), points_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  graph.ids_.reserve(sorted.size());
  graph.points_.reserve(sorted.size());
  for (const auto& [id, point] : sorted) {
    graph.index_.emplace(id, static_cast<VertexIndex>(graph.ids_.size()));
    graph.ids_.push_back(id);
    graph.points_.push_back(point);
  }

  // Undirected edges are keyed with normalized orientation (low, high).
  std::map<std::tuple<VertexIndex, VertexIndex, bool>, Edge> kept;
  for (const PendingEdge& pending : edges_) {
    Edge edge{graph.index_.at(pending.from), graph.index_.at(pending.to), pending.length_m, pending.directed};
    if (!edge.directed && edge.from > edge.to) std::swap(edge.from, edge.to);
    auto [it, inserted] = kept.emplace(std::make_tuple(edge.from, edge.to, edge.directed), edge);
    if (!inserted && edge.length_m < it->second.length_m) it->second = edge;
  }

  graph.edges_.reserve(kept.size());
  for (const auto& [key, edge] : kept) {
    graph.edges_.push_back(edge);
    graph.has_directed_ = graph.has_directed_ || edge.directed;
  }
  std::sort(graph.edges_.begin(), graph.edges_.end(), [](const Edge& l, const Edge& r) {
    const auto lk = std::make_tuple(std::min(l.from, l.to), std::max(l.from, l.to), l.directed, l.from);
    const auto rk = std::make_tuple(std::min(r.from, r.to), std::max(r.from, r.to), r.directed, r.from);
    return lk < rk;
  });

  const std::size_t n = graph.ids_.size();
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : graph.edges_) {
    ++degree[e.from];
    if (!e.directed) ++degree[e.to];
  }
  graph.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) graph.offsets_[v + 1] = graph.offsets_[v] + degree[v];
  graph.arcs_.resize(graph.offsets_[n]);
  std::vector<std::size_t> cursor(graph.offsets_.begin(), graph.offsets_.end() - 1);
  for (const Edge& e : graph.edges_) {
    graph.arcs_[cursor[e.from]++] = {e.to, e.length_m};
    if (!e.directed) graph.arcs_[cursor[e.to]++] = {e.from, e.length_m};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(graph.arcs_.begin() + static_cast<std::ptrdiff_t>(graph.offsets_[v]),
              graph.arcs_.begin() + static_cast<std::ptrdiff_t>(graph.offsets_[v + 1]),
              [](const Arc& l, const Arc& r) { return std::tie(l.target, l.length_m) < std::tie(r.target, r.length_m); });
  }
  return graph;
}

VertexId nearest_vertex(const StreetGraph& graph, GeoPoint point) {
  if (graph.empty()) throw Error(ErrorCode::kEmptyGraph, "cannot snap to an empty graph");
  VertexIndex best = 0;
  double best_distance = metric_distance(graph.metric(), graph.point(0), point);
  for (VertexIndex v = 1; v < graph.vertex_count(); ++v) {
    const double d = metric_distance(graph.metric(), graph.point(v), point);
    if (d < best_distance) {
      best = v;
      best_distance = d;
    }
  }
  return graph.id(best);
}

}  // namespace gridsight
