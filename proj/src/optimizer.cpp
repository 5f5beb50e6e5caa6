#include "gridsight/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <tuple>

#include "gridsight/error.hpp"
#include "gridsight/parallel.hpp"
#include "gridsight/shortest_path.hpp"

namespace gridsight {

namespace {

// Upper bound on cached dense distances (doubles) before profiles are recomputed per iteration.
constexpr std::size_t kProfileCacheDoubles = std::size_t{1} << 24;

using ProfilePtr = std::shared_ptr<const AnchorProfile>;

ProfilePtr make_profile(const StreetGraph& graph, VertexIndex v, const ScaleLadder& ladder) {
  return std::make_shared<const AnchorProfile>(profile_anchor(graph, v, ladder, true));
}

// Degrees and nearest-POI bookkeeping for one placement. Both the full evaluation and
// the incremental move scan read from this, so their objectives agree bit for bit.
struct PlacementState {
  std::vector<ProfilePtr> profiles;
  std::vector<std::uint32_t> degree;
  std::vector<double> best1;
  std::vector<double> best2;
  std::vector<std::uint32_t> arg1;
  Objective objective;

  void rebuild(std::size_t n) {
    degree.assign(n, 0);
    best1.assign(n, kUnbounded);
    best2.assign(n, kUnbounded);
    arg1.assign(n, 0);
    std::size_t degree_sum = 0;
    for (std::uint32_t p = 0; p < profiles.size(); ++p) {
      const AnchorProfile& profile = *profiles[p];
      for (const auto& set : profile.inconsistent) {
        for (const VertexIndex v : set) ++degree[v];
        degree_sum += set.size();
      }
      for (std::size_t v = 0; v < n; ++v) {
        const double d = profile.network[v];
        if (d < best1[v]) {
          best2[v] = best1[v];
          best1[v] = d;
          arg1[v] = p;
        } else if (d < best2[v]) {
          best2[v] = d;
        }
      }
    }
    std::size_t inconsistent = 0;
    for (const auto d : degree) inconsistent += d > 0 ? 1 : 0;
    double total = 0.0;
    std::size_t reached = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (best1[v] == kUnbounded) continue;
      total += best1[v];
      ++reached;
    }
    objective = {inconsistent, degree_sum, reached ? total / static_cast<double>(reached) : 0.0};
  }
};

struct Scratch {
  std::vector<std::int32_t> delta;
  std::vector<VertexIndex> touched;

  explicit Scratch(std::size_t n) : delta(n, 0) {}
};

// Objective after replacing POI `p`'s profile with `candidate`.
Objective evaluate_move(const PlacementState& state, std::size_t p, const AnchorProfile& candidate, Scratch& scratch) {
  const AnchorProfile& current = *state.profiles[p];
  std::size_t removed = 0;
  std::size_t added = 0;
  auto touch = [&](VertexIndex v, std::int32_t step) {
    if (scratch.delta[v] == 0) scratch.touched.push_back(v);
    scratch.delta[v] += step;
  };
  for (const auto& set : current.inconsistent) {
    removed += set.size();
    for (const VertexIndex v : set) touch(v, -1);
  }
  for (const auto& set : candidate.inconsistent) {
    added += set.size();
    for (const VertexIndex v : set) touch(v, +1);
  }
  std::int64_t inconsistent = static_cast<std::int64_t>(state.objective.inconsistent_vertices);
  for (const VertexIndex v : scratch.touched) {
    const std::int64_t before = state.degree[v];
    const std::int64_t after = before + scratch.delta[v];
    if (before > 0 && after == 0) --inconsistent;
    if (before == 0 && after > 0) ++inconsistent;
    scratch.delta[v] = 0;
  }
  scratch.touched.clear();

  double total = 0.0;
  std::size_t reached = 0;
  const std::size_t n = state.degree.size();
  for (std::size_t v = 0; v < n; ++v) {
    const double others = state.arg1[v] == p ? state.best2[v] : state.best1[v];
    const double d = std::min(others, candidate.network[v]);
    if (d == kUnbounded) continue;
    total += d;
    ++reached;
  }
  return {static_cast<std::size_t>(inconsistent), state.objective.degree_sum - removed + added,
          reached ? total / static_cast<double>(reached) : 0.0};
}

PlacementState state_for(const StreetGraph& graph, const PoiPlacement& placement, const ScaleLadder& ladder,
                         std::size_t threads) {
  PlacementState state;
  state.profiles.resize(placement.size());
  parallel_for(placement.size(), threads, [&](std::size_t p) {
    state.profiles[p] = make_profile(graph, graph.index_of(placement.pois[p].anchor), ladder);
  });
  state.rebuild(graph.vertex_count());
  return state;
}

InconsistencyReport report_for(const StreetGraph& graph, const PoiPlacement& placement, const ScaleLadder& ladder,
                               const PlacementState& state) {
  std::vector<const AnchorProfile*> views;
  views.reserve(state.profiles.size());
  for (const auto& profile : state.profiles) views.push_back(profile.get());
  return assemble_report(graph, placement, ladder, views);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

PoiPlacement random_placement(const PoiPlacement& like, const StreetGraph& graph, std::span<const VertexIndex> pool,
                              std::mt19937_64& rng) {
  std::vector<VertexIndex> shuffled(pool.begin(), pool.end());
  const std::size_t take = std::min(shuffled.size(), like.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + uniform_below(rng, shuffled.size() - i);
    std::swap(shuffled[i], shuffled[j]);
  }
  PoiPlacement out = like;
  for (std::size_t p = 0; p < out.size(); ++p) out.pois[p].anchor = graph.id(shuffled[p % take]);
  return out;
}

struct Move {
  Objective objective;
  std::size_t poi = 0;
  VertexIndex target = 0;
};

// Total order: objective, then POI id, then target vertex.
bool move_before(const Move& a, const Move& b, const PoiPlacement& placement) {
  if (const int c = compare_objectives(a.objective, b.objective); c != 0) return c < 0;
  const auto& ida = placement.pois[a.poi].id;
  const auto& idb = placement.pois[b.poi].id;
  if (ida != idb) return ida < idb;
  return a.target < b.target;
}

struct ClimbResult {
  PoiPlacement placement;
  Objective objective;
  std::vector<TraceEntry> trace;
  bool converged = false;
};

class Climber {
 public:
  Climber(const StreetGraph& graph, const SearchConfig& config, std::vector<VertexIndex> pool,
          SearchControl* control)
      : graph_(graph), config_(config), pool_(std::move(pool)), control_(control) {
    const std::size_t n = graph.vertex_count();
    cached_ = pool_.size() * n <= kProfileCacheDoubles;
    if (cached_) {
      pool_profiles_.resize(pool_.size());
      parallel_for(pool_.size(), config_.threads,
                   [&](std::size_t i) { pool_profiles_[i] = make_profile(graph_, pool_[i], config_.ladder); });
    }
  }

  const std::vector<VertexIndex>& pool() const { return pool_; }

  ClimbResult climb(PoiPlacement placement, std::size_t& iteration_counter) {
    const std::size_t n = graph_.vertex_count();
    PlacementState state;
    state.profiles.reserve(placement.size());
    for (const Poi& poi : placement.pois) state.profiles.push_back(profile_for(graph_.index_of(poi.anchor)));
    state.rebuild(n);

    ClimbResult result;
    result.trace.push_back({0, std::nullopt, std::nullopt, std::nullopt, state.objective});
    if (control_) control_->report(iteration_counter, state.objective);

    for (std::size_t iteration = 1; iteration <= config_.max_iterations; ++iteration) {
      if (cancelled()) break;
      std::vector<std::optional<Move>> per_candidate(pool_.size());
      parallel_for(pool_.size(), config_.threads, [&](std::size_t i) {
        if (cancelled()) return;
        const VertexIndex target = pool_[i];
        const ProfilePtr candidate = cached_ ? pool_profiles_[i] : make_profile(graph_, target, config_.ladder);
        Scratch scratch(n);
        std::optional<Move> best;
        // Targets already holding a POI are skipped, so moves stay within k-subsets.
        for (const auto& profile : state.profiles) {
          if (profile->anchor == target) {
            per_candidate[i] = std::nullopt;
            return;
          }
        }
        for (std::size_t p = 0; p < placement.size(); ++p) {
          Move move{evaluate_move(state, p, *candidate, scratch), p, target};
          if (!best || move_before(move, *best, placement)) best = move;
        }
        per_candidate[i] = best;
      });
      if (cancelled()) break;

      std::optional<Move> best;
      for (const auto& move : per_candidate) {
        if (move && (!best || move_before(*move, *best, placement))) best = move;
      }
      if (!best || !better(best->objective, state.objective)) {
        result.converged = true;
        break;
      }

      Poi& moved = placement.pois[best->poi];
      const VertexId from = moved.anchor;
      moved.anchor = graph_.id(best->target);
      state.profiles[best->poi] = profile_for(best->target);
      state.rebuild(n);
      result.trace.push_back({iteration, moved.id, from, moved.anchor, state.objective});
      ++iteration_counter;
      if (control_) control_->report(iteration_counter, state.objective);
    }

    result.objective = state.objective;
    result.placement = std::move(placement);
    return result;
  }

 private:
  bool cancelled() const { return control_ && control_->cancelled(); }

  ProfilePtr profile_for(VertexIndex v) {
    if (cached_) {
      const auto it = std::lower_bound(pool_.begin(), pool_.end(), v);
      if (it != pool_.end() && *it == v) return pool_profiles_[static_cast<std::size_t>(it - pool_.begin())];
    }
    return make_profile(graph_, v, config_.ladder);
  }

  const StreetGraph& graph_;
  const SearchConfig& config_;
  std::vector<VertexIndex> pool_;
  SearchControl* control_;
  bool cached_ = false;
  std::vector<ProfilePtr> pool_profiles_;
};

}  // namespace

int compare_objectives(const Objective& a, const Objective& b) noexcept {
  if (a.inconsistent_vertices != b.inconsistent_vertices) return a.inconsistent_vertices < b.inconsistent_vertices ? -1 : 1;
  if (a.degree_sum != b.degree_sum) return a.degree_sum < b.degree_sum ? -1 : 1;
  const double diff = a.mean_nearest_poi_distance - b.mean_nearest_poi_distance;
  if (std::abs(diff) <= kObjectiveMeanTolerance) return 0;
  return diff < 0 ? -1 : 1;
}

void SearchConfig::validate() const {
  if (max_iterations < 1) throw Error(ErrorCode::kInvalidConfig, "max_iterations must be >= 1");
  if (restarts < 1) throw Error(ErrorCode::kInvalidConfig, "restarts must be >= 1");
  if (candidate_pool == CandidatePool::kTopByCloseness && top_m && *top_m == 0) {
    throw Error(ErrorCode::kInvalidConfig, "candidate pool is empty (top_m = 0)");
  }
  try {
    ladder.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidConfig, e.what());
  }
}

SearchControl::Progress SearchControl::progress() const {
  std::lock_guard lock(mutex_);
  return progress_;
}

void SearchControl::report(std::size_t iteration, const Objective& best) {
  std::lock_guard lock(mutex_);
  progress_.iteration = std::max(progress_.iteration, iteration);
  if (!progress_.best || gridsight::better(best, *progress_.best)) progress_.best = best;
}

Objective evaluate_placement(const StreetGraph& graph, const PoiPlacement& placement, const ScaleLadder& ladder,
                             std::size_t threads) {
  validate_placement(graph, placement);
  ladder.validate();
  return state_for(graph, placement, ladder, threads).objective;
}

std::vector<VertexIndex> candidate_pool(const StreetGraph& graph, const SearchConfig& config) {
  const std::size_t n = graph.vertex_count();
  std::vector<VertexIndex> pool(n);
  std::iota(pool.begin(), pool.end(), VertexIndex{0});
  if (config.candidate_pool == CandidatePool::kTopByCloseness) {
    const std::size_t m = std::min(n, config.top_m.value_or(kDefaultTopM));
    if (m < n) {
      const auto score = closeness_all(graph, config.threads);
      std::stable_sort(pool.begin(), pool.end(), [&](VertexIndex a, VertexIndex b) { return score[a] > score[b]; });
      pool.resize(m);
      std::sort(pool.begin(), pool.end());
    }
  }
  if (pool.empty()) throw Error(ErrorCode::kInvalidConfig, "candidate pool is empty");
  return pool;
}

PlacementSolution local_search(const StreetGraph& graph, const PoiPlacement& initial, const SearchConfig& config,
                               SearchControl* control) {
  validate_placement(graph, initial);
  config.validate();

  Climber climber(graph, config, candidate_pool(graph, config), control);
  std::mt19937_64 rng(config.seed);
  std::optional<ClimbResult> best;
  std::size_t iterations = 0;
  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    if (restart > 0 && control && control->cancelled()) break;
    PoiPlacement start = restart == 0 ? initial : random_placement(initial, graph, climber.pool(), rng);
    ClimbResult result = climber.climb(std::move(start), iterations);
    if (!best || better(result.objective, best->objective)) best = std::move(result);
  }

  PlacementSolution solution;
  solution.placement = std::move(best->placement);
  solution.objective = best->objective;
  solution.trace = std::move(best->trace);
  solution.converged = best->converged;
  solution.centrality_delta = compare_placements(graph, initial, solution.placement, Indicator::kCloseness);
  return solution;
}

std::size_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 value = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(value);
}

PlacementSolution exhaustive_search(const StreetGraph& graph, std::size_t k, const ScaleLadder& ladder,
                                    const ExhaustiveOptions& options) {
  const std::size_t n = graph.vertex_count();
  if (k == 0) throw Error(ErrorCode::kInvalidConfig, "exhaustive search needs k >= 1");
  if (k > n) throw Error(ErrorCode::kInvalidConfig, "cannot place " + std::to_string(k) + " POIs on " +
                                                        std::to_string(n) + " vertices");
  ladder.validate();
  const std::size_t required = binomial(n, k);
  if (required > options.budget) {
    throw Error(ErrorCode::kBudgetExceeded, "exhaustive search requires " + std::to_string(required) +
                                                " evaluations, budget is " + std::to_string(options.budget));
  }

  std::vector<ProfilePtr> cache;
  const bool cached = n * n <= kProfileCacheDoubles;
  if (cached) {
    cache.resize(n);
    parallel_for(n, options.threads, [&](std::size_t v) { cache[v] = make_profile(graph, static_cast<VertexIndex>(v), ladder); });
  }

  std::vector<VertexIndex> combo(k);
  std::iota(combo.begin(), combo.end(), VertexIndex{0});
  std::optional<Objective> best_objective;
  std::vector<VertexIndex> best_combo;
  PlacementState state;
  while (true) {
    state.profiles.clear();
    for (const VertexIndex v : combo) state.profiles.push_back(cached ? cache[v] : make_profile(graph, v, ladder));
    state.rebuild(n);
    if (!best_objective || better(state.objective, *best_objective)) {
      best_objective = state.objective;
      best_combo = combo;
    }
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }

  PlacementSolution solution;
  for (std::size_t p = 0; p < k; ++p) {
    solution.placement.pois.push_back({"poi-" + std::to_string(p + 1), "poi", graph.id(best_combo[p])});
  }
  solution.objective = *best_objective;
  solution.trace.push_back({0, std::nullopt, std::nullopt, std::nullopt, *best_objective});
  solution.converged = true;
  solution.centrality_delta =
      compare_placements(graph, solution.placement, solution.placement, Indicator::kCloseness);
  return solution;
}

WhatIfResult what_if(const StreetGraph& graph, const PoiPlacement& placement, std::string_view poi_id, VertexId to,
                     const ScaleLadder& ladder) {
  validate_placement(graph, placement);
  ladder.validate();
  if (!placement.find(poi_id)) throw Error(ErrorCode::kInvalidInput, "unknown POI '" + std::string(poi_id) + "'");
  if (!graph.contains(to)) {
    throw Error(ErrorCode::kInvalidInput, "target vertex " + std::to_string(to.value) + " is not in the graph");
  }
  PoiPlacement moved = placement;
  for (Poi& poi : moved.pois) {
    if (poi.id == poi_id) poi.anchor = to;
  }
  const PlacementState state = state_for(graph, moved, ladder, 0);
  return {state.objective, report_for(graph, moved, ladder, state)};
}

}  // namespace gridsight
