#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridsight/centrality.hpp"
#include "gridsight/inconsistency.hpp"
#include "gridsight/json_io.hpp"
#include "gridsight/optimizer.hpp"

namespace gridsight {

// Inconsistency report:
// {"degrees":{"<vid>":int},"pairs":[{"poi","radius_m","vertices"}],"summary":{...}}
Json report_to_json(const InconsistencyReport& report);
InconsistencyReport report_from_json(const Json& document);

Json objective_to_json(const Objective& objective);

/// POI list entries carry {"id","category","vertex","lat","lon"}.
Json placement_to_json(const StreetGraph& graph, const PoiPlacement& placement);

/// Accepts a list (or {"pois": list}) of {"id","category"} plus either "vertex" or "lat"/"lon";
/// coordinates are snapped with nearest_vertex. Throws Error(kInvalidInput).
PoiPlacement placement_from_json(const StreetGraph& graph, const Json& document);

Json ladder_to_json(const ScaleLadder& ladder);
/// {"radii":[...],"tau":x}; missing fields keep their defaults.
ScaleLadder ladder_from_json(const Json& document);

Json centrality_delta_to_json(const CentralityDelta& delta);
Json solution_to_json(const StreetGraph& graph, const PlacementSolution& solution);

/// Keys: candidate_pool ("all" | "top-m"), top_m, max_iterations, restarts, seed, threads,
/// ladder {radii, tau}. Unknown keys are rejected with Error(kInvalidConfig).
SearchConfig search_config_from_json(const Json& document);

/// Flat TOML subset (tables, scalars, single-line arrays) translated to the JSON form above.
Json parse_toml_subset(std::string_view text);

/// *.toml files go through the TOML reader, anything else is parsed as JSON.
SearchConfig load_search_config(const std::filesystem::path& path);

/// FeatureCollection of vertex points (with "degree") followed by POI points.
Json geojson_export(const StreetGraph& graph, const InconsistencyReport& report, const PoiPlacement* placement);

/// "vertex_id,indicator,value" rows ordered by vertex id, then by the given indicator order.
std::string indicator_csv(const StreetGraph& graph, std::span<const Indicator> indicators, std::size_t threads = 0);

/// Comma-separated indicator names; an empty string selects all three.
std::vector<Indicator> parse_indicator_list(std::string_view text);

}  // namespace gridsight
