#include "gridsight/service.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "gridsight/error.hpp"
#include "gridsight/osm.hpp"
#include "gridsight/serialize.hpp"

namespace gridsight::service {

namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

Response json_response(int status, const Json& body) { return {status, "application/json", to_document(body)}; }

Response error_response(int status, std::string_view code, std::string_view message) {
  return json_response(status, Json{{"error", code}, {"message", message}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kEmptyExtract:
    case ErrorCode::kEmptyGraph: return 400;
    case ErrorCode::kIo: return 500;
    default: return 422;
  }
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start < path.size()) {
    const auto slash = path.find('/', start);
    const auto end = slash == std::string_view::npos ? path.size() : slash;
    if (end > start) parts.emplace_back(path.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

Json parse_body(const std::string& body) {
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) return Json::object();
  return parse_json(body);
}

}  // namespace

std::string_view job_state_name(JobState state) noexcept {
  switch (state) {
    case JobState::kQueued: return "queued";
    case JobState::kRunning: return "running";
    case JobState::kDone: return "done";
    case JobState::kCancelled: return "cancelled";
    case JobState::kFailed: return "failed";
  }
  return "unknown";
}

Service::Service(ServiceOptions options) : options_(options) {
  for (std::size_t i = 0; i < options_.workers; ++i) {
    workers_.emplace_back([this](std::stop_token stop) { worker_loop(stop); });
  }
}

Service::~Service() {
  {
    std::lock_guard lock(jobs_mutex_);
    for (auto& [id, job] : jobs_) job->control.request_cancel();
  }
  for (auto& worker : workers_) worker.request_stop();
  jobs_cv_.notify_all();
  workers_.clear();
}

Response Service::handle(const Request& request) {
  spdlog::debug("{} {}", request.method, request.path);
  const auto parts = split_path(request.path);
  try {
    if (parts.size() == 1 && parts[0] == "healthz") {
      if (request.method != "GET") return error_response(405, "method-not-allowed", "use GET");
      return json_response(200, Json{{"status", "ok"}});
    }
    if (!parts.empty() && parts[0] == "sessions") {
      if (parts.size() == 1) {
        if (request.method != "POST") return error_response(405, "method-not-allowed", "use POST");
        return load(request);
      }
      if (parts.size() == 3) {
        const auto session = find_session(parts[1]);
        const std::string& action = parts[2];
        const bool is_export = action == "export";
        if (is_export ? request.method != "GET" : request.method != "POST") {
          return error_response(405, "method-not-allowed", is_export ? "use GET" : "use POST");
        }
        if (action == "analyze") return analyze(*session, request);
        if (action == "whatif") return whatif(*session, request);
        if (action == "optimize") return optimize(session, request);
        if (is_export) return export_document(*session, request);
      }
    }
    if (!parts.empty() && parts[0] == "jobs") {
      if (parts.size() == 2 && request.method == "GET") return job_status(parts[1]);
      if (parts.size() == 3 && parts[2] == "cancel" && request.method == "POST") return cancel(parts[1]);
    }
    return error_response(404, "not-found", "no route for " + request.method + " " + request.path);
  } catch (const HttpError& e) {
    return error_response(e.status, e.code, e.message);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), e.code_name(), e.what());
  } catch (const std::exception& e) {
    spdlog::error("internal error on {} {}: {}", request.method, request.path, e.what());
    return error_response(500, "internal", e.what());
  }
}

Response Service::load(const Request& request) {
  const auto first = request.body.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return error_response(400, "empty-extract", "request body is empty");

  Json info = Json::object();
  std::shared_ptr<const StreetGraph> graph;
  try {
    if (request.body[first] == '{') {
      graph = std::make_shared<const StreetGraph>(graph_from_json(parse_json(request.body)));
    } else {
      const auto it = request.query.find("profile");
      const Profile profile = parse_profile(it == request.query.end() ? "drive" : it->second);
      const osm::Extract extract = osm::parse_osm_xml(request.body);
      const osm::TravelProfile travel = osm::TravelProfile::of(profile);
      graph = std::make_shared<const StreetGraph>(
          osm::build_street_graph(extract.nodes, osm::filter_profile(extract.ways, travel), travel));
      info = {{"malformed_nodes", extract.diagnostics.malformed_nodes},
              {"duplicate_nodes", extract.diagnostics.duplicate_nodes},
              {"malformed_ways", extract.diagnostics.malformed_ways},
              {"dropped_ways", extract.diagnostics.dropped_ways}};
    }
  } catch (const Error& e) {
    return error_response(400, e.code_name(), e.what());
  }

  auto session = std::make_shared<Session>();
  session->graph = graph;
  {
    std::lock_guard lock(sessions_mutex_);
    session->id = "s" + std::to_string(next_session_++);
    lru_.push_front(session);
    sessions_[session->id] = lru_.begin();
    while (lru_.size() > options_.max_sessions) {
      spdlog::info("evicting session {}", lru_.back()->id);
      sessions_.erase(lru_.back()->id);
      lru_.pop_back();
    }
  }
  Json body = {{"session", session->id}, {"vertices", graph->vertex_count()}, {"edges", graph->edge_count()},
               {"profile", std::string(profile_name(graph->profile()))}};
  if (!info.empty()) body["diagnostics"] = std::move(info);
  return json_response(200, body);
}

Response Service::analyze(Session& session, const Request& request) {
  const Json body = parse_body(request.body);
  std::unique_lock lock(session.mutex);
  PoiPlacement placement = placement_from_json(*session.graph, body.contains("pois") ? body.at("pois") : Json::array());
  const ScaleLadder ladder = body.contains("ladder") ? ladder_from_json(body.at("ladder")) : ScaleLadder{};
  InconsistencyReport report = gridsight::analyze(*session.graph, placement, ladder, options_.threads);
  Response response = json_response(200, report_to_json(report));
  session.placement = std::move(placement);
  session.ladder = ladder;
  session.report = std::move(report);
  return response;
}

Response Service::whatif(Session& session, const Request& request) {
  const Json body = parse_body(request.body);
  std::shared_lock lock(session.mutex);
  if (!session.placement) throw HttpError{409, "no-placement", "analyze a placement before posing what-if moves"};
  if (!body.contains("poi") || !body.at("poi").is_string()) {
    throw Error(ErrorCode::kInvalidInput, "what-if needs a string 'poi'");
  }
  VertexId target;
  try {
    if (body.contains("vertex")) target = VertexId{body.at("vertex").get<std::uint64_t>()};
    else target = nearest_vertex(*session.graph, {body.at("lat").get<double>(), body.at("lon").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("what-if target: ") + e.what());
  }
  const WhatIfResult result =
      what_if(*session.graph, *session.placement, body.at("poi").get<std::string>(), target, session.ladder);
  return json_response(200, Json{{"objective", objective_to_json(result.objective)},
                                 {"vertex", target.value},
                                 {"report", report_to_json(result.report)}});
}

Response Service::optimize(const std::shared_ptr<Session>& session, const Request& request) {
  Json body = parse_body(request.body);
  if (!body.is_object()) throw Error(ErrorCode::kInvalidConfig, "search config must be an object");
  std::unique_lock lock(session->mutex);
  if (!session->placement) throw HttpError{409, "no-placement", "analyze a placement before optimizing"};
  if (session->active_job) {
    throw HttpError{409, "job-running", "session already has optimize job " + *session->active_job};
  }
  if (!body.contains("ladder")) body["ladder"] = ladder_to_json(session->ladder);
  if (!body.contains("threads")) body["threads"] = options_.threads;

  auto job = std::make_shared<Job>();
  job->session = session;
  job->config = search_config_from_json(body);
  job->initial = *session->placement;
  {
    std::lock_guard jobs_lock(jobs_mutex_);
    job->id = "j" + std::to_string(next_job_++);
    jobs_[job->id] = job;
    queue_.push_back(job);
  }
  session->active_job = job->id;
  lock.unlock();
  jobs_cv_.notify_one();
  return json_response(202, Json{{"job", job->id}, {"state", "queued"}});
}

Response Service::job_status(const std::string& job_id) {
  const auto job = find_job(job_id);
  return json_response(200, job_snapshot(*job));
}

Response Service::cancel(const std::string& job_id) {
  const auto job = find_job(job_id);
  bool dequeued = false;
  {
    std::lock_guard lock(job->mutex);
    job->control.request_cancel();
    if (job->state == JobState::kQueued) {
      const StreetGraph& graph = *job->session->graph;
      PlacementSolution solution;
      solution.placement = job->initial;
      solution.objective = evaluate_placement(graph, job->initial, job->config.ladder, options_.threads);
      solution.trace.push_back({0, std::nullopt, std::nullopt, std::nullopt, solution.objective});
      solution.centrality_delta = compare_placements(graph, job->initial, job->initial, Indicator::kCloseness);
      job->control.report(0, solution.objective);
      job->result = std::move(solution);
      job->state = JobState::kCancelled;
      dequeued = true;
    }
  }
  if (dequeued) {
    {
      std::lock_guard lock(jobs_mutex_);
      std::erase(queue_, job);
    }
    std::unique_lock session_lock(job->session->mutex);
    if (job->session->active_job == job->id) job->session->active_job.reset();
  }
  std::lock_guard lock(job->mutex);
  return json_response(200, Json{{"job", job->id}, {"state", job_state_name(job->state)}});
}

Response Service::export_document(Session& session, const Request& request) {
  std::shared_lock lock(session.mutex);
  const auto format_it = request.query.find("format");
  const std::string format = format_it == request.query.end() ? "geojson" : format_it->second;
  if (format != "geojson" && format != "csv") {
    throw HttpError{422, "invalid-input", "unknown export format '" + format + "'"};
  }
  if (!session.report) throw HttpError{409, "no-report", "analyze a placement before exporting"};
  if (format == "geojson") {
    const PoiPlacement* placement = session.placement ? &*session.placement : nullptr;
    return {200, "application/geo+json", to_document(geojson_export(*session.graph, *session.report, placement))};
  }
  const auto indicators_it = request.query.find("indicators");
  const auto indicators = parse_indicator_list(indicators_it == request.query.end() ? "" : indicators_it->second);
  return {200, "text/csv", indicator_csv(*session.graph, indicators, options_.threads)};
}

std::shared_ptr<Service::Session> Service::find_session(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw HttpError{404, "unknown-session", "no session '" + id + "'"};
  lru_.splice(lru_.begin(), lru_, it->second);
  return *it->second;
}

std::shared_ptr<Service::Job> Service::find_job(const std::string& id) {
  std::lock_guard lock(jobs_mutex_);
  const auto it = jobs_.find(id);
  if (it == jobs_.end()) throw HttpError{404, "unknown-job", "no job '" + id + "'"};
  return it->second;
}

Json Service::job_snapshot(const Job& job) const {
  std::lock_guard lock(job.mutex);
  const auto progress = job.control.progress();
  Json body = {{"job", job.id},
               {"kind", "optimize"},
               {"session", job.session->id},
               {"state", job_state_name(job.state)},
               {"progress",
                {{"iteration", progress.iteration},
                 {"best", progress.best ? objective_to_json(*progress.best) : Json(nullptr)}}},
               {"result", job.result ? solution_to_json(*job.session->graph, *job.result) : Json(nullptr)}};
  if (job.state == JobState::kFailed) body["error"] = job.error;
  return body;
}

void Service::execute(const std::shared_ptr<Job>& job) {
  {
    std::lock_guard lock(job->mutex);
    if (job->state != JobState::kQueued) return;
    job->state = JobState::kRunning;
  }
  spdlog::info("job {} started", job->id);
  try {
    PlacementSolution solution = local_search(*job->session->graph, job->initial, job->config, &job->control);
    const JobState state = job->control.cancelled() ? JobState::kCancelled : JobState::kDone;
    finish_job(*job, state, std::move(solution), {});
  } catch (const std::exception& e) {
    finish_job(*job, JobState::kFailed, std::nullopt, e.what());
  }
  spdlog::info("job {} finished", job->id);
}

void Service::finish_job(Job& job, JobState state, std::optional<PlacementSolution> result, std::string error) {
  {
    std::unique_lock lock(job.session->mutex);
    if (state == JobState::kDone && result) {
      job.session->placement = result->placement;
      job.session->ladder = job.config.ladder;
      job.session->report = gridsight::analyze(*job.session->graph, result->placement, job.config.ladder, options_.threads);
    }
    if (job.session->active_job == job.id) job.session->active_job.reset();
  }
  std::lock_guard lock(job.mutex);
  job.result = std::move(result);
  job.error = std::move(error);
  job.state = state;
}

void Service::worker_loop(std::stop_token stop) {
  while (true) {
    std::shared_ptr<Job> job;
    {
      std::unique_lock lock(jobs_mutex_);
      if (!jobs_cv_.wait(lock, stop, [&] { return !queue_.empty(); })) return;
      job = queue_.front();
      queue_.pop_front();
    }
    execute(job);
  }
}

void Service::run_pending_jobs() {
  while (true) {
    std::shared_ptr<Job> job;
    {
      std::lock_guard lock(jobs_mutex_);
      if (queue_.empty()) return;
      job = queue_.front();
      queue_.pop_front();
    }
    execute(job);
  }
}

}  // namespace gridsight::service
