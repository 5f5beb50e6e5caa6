#include <httplib.h>
#include <spdlog/spdlog.h>

#include "gridsight/service.hpp"

namespace gridsight::service {

namespace {

void dispatch(Service& service, const httplib::Request& in, httplib::Response& out) {
  Request request;
  request.method = in.method;
  request.path = in.path;
  for (const auto& [key, value] : in.params) request.query.emplace(key, value);
  request.body = in.body;
  const Response response = service.handle(request);
  out.status = response.status;
  out.set_content(response.body, response.content_type);
}

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>()) {
  const auto handler = [&service](const httplib::Request& in, httplib::Response& out) { dispatch(service, in, out); };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
  impl_->server.Put(R"(/.*)", handler);
  impl_->server.Delete(R"(/.*)", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

bool serve(Service& service, const std::string& host, int port) {
  HttpServer server(service);
  if (server.bind(host, port) < 0) return false;
  spdlog::info("listening on {}:{}", host, port);
  return server.listen();
}

}  // namespace gridsight::service
