#include "gridsight/shortest_path.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

#include "gridsight/error.hpp"

namespace gridsight {

DistanceMap::DistanceMap(std::vector<VertexId> sources, std::optional<double> cutoff, std::vector<Entry> entries)
    : sources_(std::move(sources)), cutoff_(cutoff), entries_(std::move(entries)) {}

std::optional<double> DistanceMap::find(VertexId vertex) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), vertex,
                                   [](const Entry& e, VertexId v) { return e.vertex < v; });
  if (it == entries_.end() || it->vertex != vertex) return std::nullopt;
  return it->meters;
}

VertexSet DistanceMap::reached() const {
  VertexSet out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.vertex);
  return out;
}

std::vector<double> dense_distances(const StreetGraph& graph, std::span<const VertexIndex> sources, double cutoff) {
  using Item = std::pair<double, VertexIndex>;
  std::vector<double> dist(graph.vertex_count(), kUnbounded);
  std::vector<bool> settled(graph.vertex_count(), false);
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (const VertexIndex s : sources) {
    if (dist[s] != 0.0) {
      dist[s] = 0.0;
      heap.emplace(0.0, s);
    }
  }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = true;
    for (const Arc& arc : graph.out_arcs(u)) {
      const double nd = d + arc.length_m;
      if (nd < dist[arc.target] && within(nd, cutoff)) {
        dist[arc.target] = nd;
        heap.emplace(nd, arc.target);
      }
    }
  }
  return dist;
}

DistanceMap shortest_path_distances(const StreetGraph& graph, std::span<const VertexId> sources,
                                    std::optional<double> cutoff) {
  if (sources.empty()) throw Error(ErrorCode::kInvalidInput, "shortest paths need at least one source");
  std::vector<VertexIndex> indices;
  indices.reserve(sources.size());
  for (const VertexId s : sources) indices.push_back(graph.index_of(s));

  const auto dist = dense_distances(graph, indices, cutoff.value_or(kUnbounded));
  std::vector<DistanceMap::Entry> entries;
  for (VertexIndex v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnbounded) entries.push_back({graph.id(v), dist[v]});
  }
  std::vector<VertexId> sorted_sources(sources.begin(), sources.end());
  std::sort(sorted_sources.begin(), sorted_sources.end());
  sorted_sources.erase(std::unique(sorted_sources.begin(), sorted_sources.end()), sorted_sources.end());
  return DistanceMap(std::move(sorted_sources), cutoff, std::move(entries));
}

}  // namespace gridsight
