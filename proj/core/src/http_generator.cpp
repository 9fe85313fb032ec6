#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "qcjudge/refine.hpp"

namespace qcjudge {

using nlohmann::json;

HttpGenerator::HttpGenerator(std::string url, std::string model, std::string key_env, std::chrono::seconds timeout)
    : url_(std::move(url)), model_(std::move(model)), key_env_(std::move(key_env)), timeout_(timeout) {}

std::string HttpGenerator::describe() const { return "http:" + url_ + (model_.empty() ? "" : "#" + model_); }

std::string HttpGenerator::extract_code(std::string_view completion) {
  const std::size_t open = completion.find("```");
  if (open == std::string_view::npos) return std::string(completion);
  const std::size_t body = completion.find('\n', open);
  if (body == std::string_view::npos) return std::string(completion);
  const std::size_t close = completion.find("```", body + 1);
  return std::string(completion.substr(body + 1, close == std::string_view::npos ? std::string_view::npos : close - body - 1));
}

Generation HttpGenerator::generate(std::string_view prompt) {
  // Split "scheme://host[:port]/path".
  const std::size_t scheme_end = url_.find("://");
  if (scheme_end == std::string::npos) return Generation::failure("malformed generator URL '" + url_ + "'");
  const std::size_t path_start = url_.find('/', scheme_end + 3);
  const std::string origin = url_.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url_.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) return Generation::failure("unsupported generator URL '" + url_ + "'");
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);

  httplib::Headers headers;
  if (const char* key = std::getenv(key_env_.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  json body;
  if (!model_.empty()) body["model"] = model_;
  body["messages"] = json::array({json{{"role", "user"}, {"content", std::string(prompt)}}});

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) return Generation::failure("generator request failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) {
    return Generation::failure("generator endpoint returned HTTP " + std::to_string(res->status));
  }
  try {
    const json reply = json::parse(res->body);
    const std::string content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    return Generation::success(extract_code(content));
  } catch (const std::exception& e) {
    return Generation::failure(std::string("unexpected generator response: ") + e.what());
  }
}

}  // namespace qcjudge
