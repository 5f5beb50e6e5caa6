#include "gridsight/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "gridsight/error.hpp"
#include "gridsight/inconsistency.hpp"
#include "gridsight/json_io.hpp"
#include "gridsight/log.hpp"
#include "gridsight/optimizer.hpp"
#include "gridsight/osm.hpp"
#include "gridsight/serialize.hpp"
#include "gridsight/service.hpp"

namespace gridsight::cli {

namespace {

struct IngestArgs {
  std::string input;
  std::string profile = "drive";
  std::string output;
};

struct AnalyzeArgs {
  std::string graph;
  std::string pois;
  std::vector<double> radii{400.0, 800.0, 1600.0};
  double tau = 1.5;
  std::string output;
  std::size_t threads = 0;
};

struct OptimizeArgs {
  std::string graph;
  std::string pois;
  std::string config;
  std::string output;
  std::uint64_t seed = 42;
  std::size_t threads = 0;
};

struct ExportArgs {
  std::string report;
  std::string graph;
  std::string format = "geojson";
  std::string output;
  std::string pois;
  std::string indicators;
  std::size_t threads = 0;
};

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t threads = 0;
  std::size_t max_sessions = 8;
};

StreetGraph load_graph(const std::string& path) { return graph_from_json(parse_json(read_text_file(path))); }

int do_ingest(const IngestArgs& a, std::ostream& out) {
  const StreetGraph graph = osm::ingest(read_text_file(a.input), parse_profile(a.profile));
  write_text_file(a.output, to_document(graph_to_json(graph)));
  out << "ingested " << graph.vertex_count() << " vertices, " << graph.edge_count() << " edges\n";
  return kExitOk;
}

int do_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const StreetGraph graph = load_graph(a.graph);
  const PoiPlacement placement = placement_from_json(graph, parse_json(read_text_file(a.pois)));
  ScaleLadder ladder{a.radii, a.tau};
  const InconsistencyReport report = analyze(graph, placement, ladder, a.threads);
  write_text_file(a.output, to_document(report_to_json(report)));
  out << "inconsistent vertices: " << report.summary.inconsistent_vertices
      << ", degree sum: " << report.summary.degree_sum << ", max degree: " << report.summary.degree_max << "\n";
  return kExitOk;
}

int do_optimize(const OptimizeArgs& a, bool seed_given, std::ostream& out) {
  const StreetGraph graph = load_graph(a.graph);
  const PoiPlacement placement = placement_from_json(graph, parse_json(read_text_file(a.pois)));
  SearchConfig config = a.config.empty() ? SearchConfig{} : load_search_config(a.config);
  if (seed_given || a.config.empty()) config.seed = a.seed;
  if (a.threads != 0) config.threads = a.threads;
  const PlacementSolution solution = local_search(graph, placement, config);
  write_text_file(a.output, to_document(solution_to_json(graph, solution)));
  out << "objective: " << solution.objective.inconsistent_vertices << " inconsistent, degree sum "
      << solution.objective.degree_sum << ", " << solution.trace.size() - 1 << " moves"
      << (solution.converged ? " (local optimum)" : "") << "\n";
  return kExitOk;
}

int do_export(const ExportArgs& a, std::ostream& out) {
  if (a.format != "geojson" && a.format != "csv") {
    throw Error(ErrorCode::kInvalidInput, "unknown export format '" + a.format + "'");
  }
  const StreetGraph graph = load_graph(a.graph);
  if (a.format == "csv") {
    write_text_file(a.output, indicator_csv(graph, parse_indicator_list(a.indicators), a.threads));
  } else {
    const InconsistencyReport report = report_from_json(parse_json(read_text_file(a.report)));
    std::optional<PoiPlacement> placement;
    if (!a.pois.empty()) placement = placement_from_json(graph, parse_json(read_text_file(a.pois)));
    write_text_file(a.output, to_document(geojson_export(graph, report, placement ? &*placement : nullptr)));
  }
  out << "wrote " << a.output << "\n";
  return kExitOk;
}

int do_serve(const ServeArgs& a, std::ostream& err) {
  service::Service svc({a.max_sessions, 1, a.threads});
  if (!service::serve(svc, a.host, a.port)) {
    err << "error: cannot bind " << a.host << ":" << a.port << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  configure_logging();

  CLI::App app{"Street-network inconsistency analysis and POI placement", "gridsight"};
  app.require_subcommand(1);
  app.allow_extras(false);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a street graph from an OSM XML extract");
  ingest_cmd->add_option("--input", ingest.input, "OSM XML file")->required();
  ingest_cmd->add_option("--profile", ingest.profile, "Travel profile")->check(CLI::IsMember({"drive", "walk"}))
      ->capture_default_str();
  ingest_cmd->add_option("--output", ingest.output, "Graph JSON output")->required();

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute the inconsistency report for a POI placement");
  analyze_cmd->add_option("--graph", analyze_args.graph, "Graph JSON")->required();
  analyze_cmd->add_option("--pois", analyze_args.pois, "POI list JSON")->required();
  analyze_cmd->add_option("--radii", analyze_args.radii, "Ascending radii in meters")->delimiter(',')
      ->capture_default_str();
  analyze_cmd->add_option("--tau", analyze_args.tau, "Detour tolerance (>= 1)")->capture_default_str();
  analyze_cmd->add_option("--output", analyze_args.output, "Report JSON output")->required();
  analyze_cmd->add_option("--threads", analyze_args.threads, "Worker threads (0 = auto)")->capture_default_str();

  OptimizeArgs optimize_args;
  auto* optimize_cmd = app.add_subcommand("optimize", "Relocate POIs to reduce inconsistent vertices");
  optimize_cmd->add_option("--graph", optimize_args.graph, "Graph JSON")->required();
  optimize_cmd->add_option("--pois", optimize_args.pois, "Initial POI list JSON")->required();
  optimize_cmd->add_option("--config", optimize_args.config, "Search config (.toml or .json)");
  optimize_cmd->add_option("--output", optimize_args.output, "Solution JSON output")->required();
  auto* seed_opt = optimize_cmd->add_option("--seed", optimize_args.seed, "Random seed")->capture_default_str();
  optimize_cmd->add_option("--threads", optimize_args.threads, "Worker threads (0 = auto)")->capture_default_str();

  ExportArgs export_args;
  auto* export_cmd = app.add_subcommand("export", "Export a report as GeoJSON or centrality indicators as CSV");
  export_cmd->add_option("--report", export_args.report, "Report JSON (required for geojson)");
  export_cmd->add_option("--graph", export_args.graph, "Graph JSON")->required();
  export_cmd->add_option("--format", export_args.format, "geojson or csv")->capture_default_str();
  export_cmd->add_option("--output", export_args.output, "Output file")->required();
  export_cmd->add_option("--pois", export_args.pois, "POI list JSON to include as points");
  export_cmd->add_option("--indicators", export_args.indicators,
                         "Comma-separated closeness,betweenness,accessibility (csv; default all)");
  export_cmd->add_option("--threads", export_args.threads, "Worker threads (0 = auto)")->capture_default_str();

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--host", serve_args.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve_args.port, "Bind port")->capture_default_str();
  serve_cmd->add_option("--threads", serve_args.threads, "Worker threads (0 = auto)")->capture_default_str();
  serve_cmd->add_option("--max-sessions", serve_args.max_sessions, "Session cap")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    const auto chosen = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (chosen.empty() ? app.help() : chosen.front()->help());
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) return do_ingest(ingest, out);
    if (*analyze_cmd) return do_analyze(analyze_args, out);
    if (*optimize_cmd) return do_optimize(optimize_args, seed_opt->count() > 0, out);
    if (*export_cmd) {
      if (export_args.format == "geojson" && export_args.report.empty()) {
        err << "--report is required for --format geojson\n" << export_cmd->help();
        return kExitUsage;
      }
      return do_export(export_args, out);
    }
    if (*serve_cmd) return do_serve(serve_args, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace gridsight::cli
