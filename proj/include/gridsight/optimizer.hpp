#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gridsight/centrality.hpp"
#include "gridsight/inconsistency.hpp"
#include "gridsight/street_graph.hpp"

namespace gridsight {

/// Lexicographic objective: fewer inconsistent vertices, then smaller degree sum, then a
/// shorter mean network distance from each POI-reachable vertex to its nearest POI.
struct Objective {
  std::size_t inconsistent_vertices = 0;
  std::size_t degree_sum = 0;
  double mean_nearest_poi_distance = 0.0;

  friend bool operator==(const Objective&, const Objective&) = default;
};

/// Mean distances closer than this compare equal.
inline constexpr double kObjectiveMeanTolerance = 1e-9;

/// -1, 0 or 1.
int compare_objectives(const Objective& a, const Objective& b) noexcept;
inline bool better(const Objective& a, const Objective& b) noexcept { return compare_objectives(a, b) < 0; }

enum class CandidatePool { kAllVertices, kTopByCloseness };

inline constexpr std::size_t kDefaultTopM = 512;
inline constexpr std::size_t kDefaultExhaustiveBudget = 200'000;

struct SearchConfig {
  CandidatePool candidate_pool = CandidatePool::kTopByCloseness;
  /// Unset means min(n, kDefaultTopM). Ignored for kAllVertices.
  std::optional<std::size_t> top_m;
  std::size_t max_iterations = 100;
  std::size_t restarts = 1;
  std::uint64_t seed = 42;
  ScaleLadder ladder;
  std::size_t threads = 0;

  /// Throws Error(kInvalidConfig).
  void validate() const;
};

struct TraceEntry {
  std::size_t iteration = 0;
  std::optional<std::string> poi_id;  // empty for iteration 0
  std::optional<VertexId> from;
  std::optional<VertexId> to;
  Objective objective;
};

struct PlacementSolution {
  PoiPlacement placement;
  Objective objective;
  std::vector<TraceEntry> trace;
  CentralityDelta centrality_delta;
  bool converged = false;
};

/// Cooperative cancellation flag and progress counter shared with a running search.
class SearchControl {
 public:
  struct Progress {
    std::size_t iteration = 0;  // cumulative over restarts
    std::optional<Objective> best;
  };

  void request_cancel() noexcept { cancelled_.store(true); }
  bool cancelled() const noexcept { return cancelled_.load(); }

  Progress progress() const;
  /// Records progress; the best objective never moves backwards.
  void report(std::size_t iteration, const Objective& best);

 private:
  std::atomic<bool> cancelled_{false};
  mutable std::mutex mutex_;
  Progress progress_;
};

/// Objective of `placement` computed from a fresh inconsistency analysis.
Objective evaluate_placement(const StreetGraph& graph, const PoiPlacement& placement, const ScaleLadder& ladder,
                             std::size_t threads = 0);

/// Vertices considered as relocation targets, ascending index. Throws Error(kInvalidConfig) when empty.
std::vector<VertexIndex> candidate_pool(const StreetGraph& graph, const SearchConfig& config);

/// Best-improvement hill climbing over single-POI relocations, with seeded random restarts.
/// A POI never moves onto a vertex that another POI occupies.
/// Honors `control` cancellation between and within iterations, returning the best so far.
PlacementSolution local_search(const StreetGraph& graph, const PoiPlacement& initial, const SearchConfig& config,
                               SearchControl* control = nullptr);

struct ExhaustiveOptions {
  std::size_t budget = kDefaultExhaustiveBudget;
  std::size_t threads = 0;
};

/// Global optimum over every k-subset of vertices. Ties go to the smallest sorted id tuple.
/// Throws Error(kInvalidConfig) for k = 0 or k > n and Error(kBudgetExceeded) when C(n, k) > budget.
PlacementSolution exhaustive_search(const StreetGraph& graph, std::size_t k, const ScaleLadder& ladder,
                                    const ExhaustiveOptions& options = {});

/// C(n, k), saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k) noexcept;

struct WhatIfResult {
  Objective objective;
  InconsistencyReport report;
};

/// Evaluates moving one POI without touching `placement`. Throws Error(kInvalidInput) for an
/// unknown POI id or target vertex.
WhatIfResult what_if(const StreetGraph& graph, const PoiPlacement& placement, std::string_view poi_id,
                     VertexId to, const ScaleLadder& ladder);

}  // namespace gridsight
