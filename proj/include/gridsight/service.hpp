#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "gridsight/inconsistency.hpp"
#include "gridsight/json_io.hpp"
#include "gridsight/optimizer.hpp"
#include "gridsight/street_graph.hpp"

namespace gridsight::service {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct ServiceOptions {
  std::size_t max_sessions = 8;
  /// Background optimize workers. With 0, queued jobs only run through run_pending_jobs().
  std::size_t workers = 1;
  /// Parallelism inside analyses and searches (0 = auto).
  std::size_t threads = 0;
};

enum class JobState { kQueued, kRunning, kDone, kCancelled, kFailed };

std::string_view job_state_name(JobState state) noexcept;

/// HTTP-agnostic request handler behind the `serve` endpoint set:
///   POST /sessions                      load graph JSON or OSM XML (?profile=drive|walk)
///   POST /sessions/{id}/analyze         {"pois":[...],"ladder":{...}}
///   POST /sessions/{id}/whatif          {"poi":id,"vertex":u64} or {"poi":id,"lat":..,"lon":..}
///   POST /sessions/{id}/optimize        search config JSON
///   GET  /jobs/{id}, POST /jobs/{id}/cancel
///   GET  /sessions/{id}/export?format=geojson|csv[&indicators=...]
///   GET  /healthz
/// Errors use the body {"error": code, "message": text}.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(const Request& request);

  /// Runs every queued job on the calling thread.
  void run_pending_jobs();

 private:
  struct Session {
    std::string id;
    std::shared_ptr<const StreetGraph> graph;
    mutable std::shared_mutex mutex;
    std::optional<PoiPlacement> placement;
    ScaleLadder ladder;
    std::optional<InconsistencyReport> report;
    std::optional<std::string> active_job;
  };

  struct Job {
    std::string id;
    std::shared_ptr<Session> session;
    SearchConfig config;
    PoiPlacement initial;
    SearchControl control;
    mutable std::mutex mutex;
    JobState state = JobState::kQueued;
    std::optional<PlacementSolution> result;
    std::string error;
  };

  Response load(const Request& request);
  Response analyze(Session& session, const Request& request);
  Response whatif(Session& session, const Request& request);
  Response optimize(const std::shared_ptr<Session>& session, const Request& request);
  Response job_status(const std::string& job_id);
  Response cancel(const std::string& job_id);
  Response export_document(Session& session, const Request& request);

  std::shared_ptr<Session> find_session(const std::string& id);
  std::shared_ptr<Job> find_job(const std::string& id);
  Json job_snapshot(const Job& job) const;
  void execute(const std::shared_ptr<Job>& job);
  void finish_job(Job& job, JobState state, std::optional<PlacementSolution> result, std::string error);
  void worker_loop(std::stop_token stop);

  ServiceOptions options_;

  std::mutex sessions_mutex_;
  std::list<std::shared_ptr<Session>> lru_;
  std::unordered_map<std::string, std::list<std::shared_ptr<Session>>::iterator> sessions_;
  std::size_t next_session_ = 1;

  std::mutex jobs_mutex_;
  std::condition_variable_any jobs_cv_;
  std::unordered_map<std::string, std::shared_ptr<Job>> jobs_;
  std::deque<std::shared_ptr<Job>> queue_;
  std::size_t next_job_ = 1;

  std::vector<std::jthread> workers_;
};

/// HTTP/1.1 front end routing every request into a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port, or -1 on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop(). Requires a successful bind().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocking HTTP/1.1 server on host:port. Returns false when the address cannot be bound.
bool serve(Service& service, const std::string& host, int port);

}  // namespace gridsight::service
