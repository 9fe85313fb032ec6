#include <httplib.h>
#include <nlohmann/json.hpp>

#include "qcjudge/service.hpp"

namespace qcjudge {

struct HttpServer::Impl {
  explicit Impl(const EvaluationService& s) : service(s) {}

  const EvaluationService& service;
  httplib::Server server;
};

namespace {

void send(httplib::Response& res, const HttpReply& reply) {
  res.status = reply.status;
  res.set_content(reply.body, reply.content_type);
}

std::optional<std::string_view> secret_of(const httplib::Request& req) {
  auto it = req.headers.find(std::string(kSecretHeader));
  if (it == req.headers.end()) return std::nullopt;
  return std::string_view(it->second);
}

}  // namespace

HttpServer::HttpServer(const EvaluationService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  const EvaluationService& svc = impl_->service;

  srv.set_pre_routing_handler([&svc](const httplib::Request& req, httplib::Response& res) {
    if (svc.authorized(secret_of(req))) return httplib::Server::HandlerResponse::Unhandled;
    send(res, HttpReply{401, R"({"error":"missing or wrong shared secret"})"});
    return httplib::Server::HandlerResponse::Handled;
  });
  srv.Post("/evaluate", [&svc](const httplib::Request& req, httplib::Response& res) { send(res, svc.evaluate(req.body)); });
  srv.Get("/problems", [&svc](const httplib::Request&, httplib::Response& res) { send(res, svc.problems()); });
  srv.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(nlohmann::json{{"error", what}}.dump(), "application/json");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace qcjudge
