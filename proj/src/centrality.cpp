#include "gridsight/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "gridsight/error.hpp"
#include "gridsight/parallel.hpp"
#include "gridsight/shortest_path.hpp"

namespace gridsight {

namespace {

// Sources per betweenness block; fixed so the summation order never depends on thread count.
constexpr std::size_t kBrandesBlock = 32;

double closeness_of(const StreetGraph& graph, VertexIndex v) {
  const std::size_t n = graph.vertex_count();
  if (n <= 1) return 0.0;
  const auto dist = dense_distances(graph, std::span(&v, 1));
  std::size_t reached = 0;
  double total = 0.0;
  for (const double d : dist) {
    if (d == kUnbounded) continue;
    ++reached;
    total += d;
  }
  if (reached <= 1 || total <= 0.0) return 0.0;
  const double others = static_cast<double>(reached - 1);
  return (others / total) * (others / static_cast<double>(n - 1));
}

void brandes_from(const StreetGraph& graph, VertexIndex source, std::vector<double>& accumulator) {
  using Item = std::pair<double, VertexIndex>;
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, kUnbounded);
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  std::vector<std::vector<VertexIndex>> preds(n);
  std::vector<bool> settled(n, false);
  std::vector<VertexIndex> order;
  order.reserve(n);

  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  sigma[source] = 1.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (settled[v]) continue;
    settled[v] = true;
    order.push_back(v);
    for (const Arc& arc : graph.out_arcs(v)) {
      const VertexIndex w = arc.target;
      if (settled[w]) continue;
      const double nd = d + arc.length_m;
      if (nd < dist[w] - kDistanceEpsilon) {
        dist[w] = nd;
        sigma[w] = sigma[v];
        preds[w].assign(1, v);
        heap.emplace(nd, w);
      } else if (std::abs(nd - dist[w]) <= kDistanceEpsilon) {
        sigma[w] += sigma[v];
        preds[w].push_back(v);
      }
    }
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexIndex w = *it;
    for (const VertexIndex v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    if (w != source) accumulator[w] += delta[w];
  }
}

}  // namespace

std::string_view indicator_name(Indicator indicator) noexcept {
  switch (indicator) {
    case Indicator::kCloseness: return "closeness";
    case Indicator::kBetweenness: return "betweenness";
    case Indicator::kAccessibility: return "accessibility";
  }
  return "unknown";
}

Indicator parse_indicator(std::string_view name) {
  if (name == "closeness") return Indicator::kCloseness;
  if (name == "betweenness") return Indicator::kBetweenness;
  if (name == "accessibility") return Indicator::kAccessibility;
  throw Error(ErrorCode::kInvalidInput, "unknown indicator '" + std::string(name) + "'");
}

double closeness(const StreetGraph& graph, VertexId vertex) { return closeness_of(graph, graph.index_of(vertex)); }

std::vector<double> closeness_all(const StreetGraph& graph, std::size_t threads) {
  std::vector<double> out(graph.vertex_count(), 0.0);
  parallel_for(out.size(), threads, [&](std::size_t v) { out[v] = closeness_of(graph, static_cast<VertexIndex>(v)); });
  return out;
}

std::vector<double> betweenness(const StreetGraph& graph, std::size_t threads) {
  const std::size_t n = graph.vertex_count();
  const std::size_t blocks = (n + kBrandesBlock - 1) / kBrandesBlock;
  std::vector<std::vector<double>> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    partial[b].assign(n, 0.0);
    const std::size_t end = std::min(n, (b + 1) * kBrandesBlock);
    for (std::size_t s = b * kBrandesBlock; s < end; ++s) brandes_from(graph, static_cast<VertexIndex>(s), partial[b]);
  });
  std::vector<double> total(n, 0.0);
  for (const auto& block : partial) {
    for (std::size_t v = 0; v < n; ++v) total[v] += block[v];
  }
  if (!graph.has_directed_edges()) {
    for (double& value : total) value /= 2.0;
  }
  return total;
}

double accessibility(const StreetGraph& graph, VertexId vertex, int steps) {
  if (steps < 1) throw Error(ErrorCode::kInvalidInput, "accessibility needs at least one step");
  std::map<VertexIndex, double> current{{graph.index_of(vertex), 1.0}};
  std::vector<VertexIndex> neighbours;
  for (int step = 0; step < steps; ++step) {
    std::map<VertexIndex, double> next;
    for (const auto& [v, p] : current) {
      neighbours.clear();
      for (const Arc& arc : graph.out_arcs(v)) {
        if (neighbours.empty() || neighbours.back() != arc.target) neighbours.push_back(arc.target);
      }
      if (neighbours.empty()) {
        next[v] += p;
        continue;
      }
      const double share = p / static_cast<double>(neighbours.size());
      for (const VertexIndex w : neighbours) next[w] += share;
    }
    current = std::move(next);
  }
  // A uniform distribution over k endpoints has exp(H) = k; return it without rounding.
  const double first = current.begin()->second;
  if (std::all_of(current.begin(), current.end(), [&](const auto& kv) { return kv.second == first; })) {
    return static_cast<double>(current.size());
  }
  double entropy = 0.0;
  for (const auto& [v, p] : current) {
    if (p > 0.0) entropy -= p * std::log(p);
  }
  return std::exp(entropy);
}

CentralityDelta compare_placements(const StreetGraph& graph, const PoiPlacement& before, const PoiPlacement& after,
                                   Indicator indicator) {
  std::set<std::string_view> before_ids;
  std::set<std::string_view> after_ids;
  for (const Poi& p : before.pois) before_ids.insert(p.id);
  for (const Poi& p : after.pois) after_ids.insert(p.id);
  if (before_ids != after_ids || before_ids.size() != before.size() || after_ids.size() != after.size()) {
    throw Error(ErrorCode::kInvalidInput, "placements must carry the same POI ids");
  }

  std::vector<double> table;
  if (indicator == Indicator::kBetweenness) table = betweenness(graph);
  auto value_at = [&](VertexId v) {
    switch (indicator) {
      case Indicator::kCloseness: return closeness(graph, v);
      case Indicator::kBetweenness: return table[graph.index_of(v)];
      case Indicator::kAccessibility: return accessibility(graph, v, kDefaultAccessibilitySteps);
    }
    return 0.0;
  };

  CentralityDelta delta;
  delta.indicator = indicator;
  double total_change = 0.0;
  for (const Poi& poi : before.pois) {
    const Poi* moved = after.find(poi.id);
    AnchorChange change{poi.id, poi.anchor, moved->anchor, value_at(poi.anchor), value_at(moved->anchor)};
    delta.before.emplace_back(poi.id, change.before);
    delta.after.emplace_back(poi.id, change.after);
    total_change += change.after - change.before;
    delta.poi_anchor_changes.push_back(std::move(change));
  }
  if (!before.empty()) delta.mean_change = total_change / static_cast<double>(before.size());
  return delta;
}

CentralityDelta compare_placements(const StreetGraph& graph, const PoiPlacement& before, const PoiPlacement& after,
                                   std::string_view indicator) {
  return compare_placements(graph, before, after, parse_indicator(indicator));
}

}  // namespace gridsight
