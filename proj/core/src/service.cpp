#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qcjudge/service.hpp"

namespace qcjudge {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

HttpReply error_reply(int status, std::string_view message) {
  json j;
  j["error"] = message;
  return {status, j.dump(), "application/json"};
}

long long parse_integer(const std::string& text, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::runtime_error(std::string(what) + ": '" + text + "' is not an integer");
  return v;
}

}  // namespace

ServiceConfig load_config(const std::optional<fs::path>& file, const EnvLookup& env) {
  ServiceConfig cfg;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw std::runtime_error(file->string() + ": cannot be read");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(file->string() + ": invalid JSON: " + e.what());
    }
    try {
      if (j.contains("bank")) cfg.bank = j["bank"].get<std::string>();
      if (j.contains("host")) cfg.host = j["host"].get<std::string>();
      if (j.contains("port")) cfg.port = j["port"].get<int>();
      if (j.contains("qubit_cap")) cfg.qubit_cap = j["qubit_cap"].get<std::size_t>();
      if (j.contains("timeout_ms")) cfg.timeout = std::chrono::milliseconds(j["timeout_ms"].get<long long>());
      if (j.contains("adapter_command") && !j["adapter_command"].is_null()) cfg.adapter_command = j["adapter_command"].get<std::string>();
      if (j.contains("shared_secret") && !j["shared_secret"].is_null()) cfg.shared_secret = j["shared_secret"].get<std::string>();
    } catch (const json::exception& e) {
      throw std::runtime_error(file->string() + ": " + e.what());
    }
  }

  const EnvLookup lookup = env ? env : [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    return v ? std::optional<std::string>(v) : std::nullopt;
  };
  if (auto v = lookup("QCJUDGE_BANK")) cfg.bank = *v;
  if (auto v = lookup("QCJUDGE_HOST")) cfg.host = *v;
  if (auto v = lookup("QCJUDGE_PORT")) cfg.port = static_cast<int>(parse_integer(*v, "QCJUDGE_PORT"));
  if (auto v = lookup("QCJUDGE_QUBIT_CAP")) cfg.qubit_cap = static_cast<std::size_t>(parse_integer(*v, "QCJUDGE_QUBIT_CAP"));
  if (auto v = lookup("QCJUDGE_TIMEOUT_MS")) cfg.timeout = std::chrono::milliseconds(parse_integer(*v, "QCJUDGE_TIMEOUT_MS"));
  if (auto v = lookup("QCJUDGE_ADAPTER")) cfg.adapter_command = *v;
  if (auto v = lookup("QCJUDGE_SHARED_SECRET")) cfg.shared_secret = *v;

  if (cfg.port < 0 || cfg.port > 65535) throw std::runtime_error("port out of range: " + std::to_string(cfg.port));
  if (cfg.qubit_cap == 0 || cfg.qubit_cap > kMaxQubits) {
    throw std::runtime_error("qubit_cap must lie in [1, " + std::to_string(kMaxQubits) + "]");
  }
  if (cfg.timeout.count() <= 0) throw std::runtime_error("timeout must be positive");
  return cfg;
}

EvaluationService::EvaluationService(std::shared_ptr<const ProblemBank> bank, ServiceConfig config,
                                     std::shared_ptr<AdapterPort> adapter)
    : bank_(std::move(bank)), config_(std::move(config)), adapter_(std::move(adapter)) {
  if (!adapter_ && config_.adapter_command) {
    adapter_ = std::make_shared<SubprocessAdapter>(*config_.adapter_command, config_.timeout);
  }
}

bool EvaluationService::authorized(std::optional<std::string_view> secret) const {
  if (!config_.shared_secret) return true;
  return secret && *secret == *config_.shared_secret;
}

std::string evaluation_body(std::string_view problem_id, const EvaluationReport& report, std::string_view source,
                            Language language) {
  std::string body = "{\"problem_id\": " + json(problem_id).dump();
  body += ", \"verdict\": \"" + std::string(verdict_name(report.verdict)) + "\"";
  body += ", \"report\": " + report_json(report);
  body += ", \"measured_depth\": " + (report.measured_depth ? std::to_string(*report.measured_depth) : "null");
  body += ", \"error_text\": " + (report.error_text ? json(*report.error_text).dump() : "null");
  body += ", \"diagnostic\": " + json(report.diagnostic).dump();
  body += ", \"feedback\": ";
  body += report.verdict == Verdict::AC ? "null" : json(render_feedback(report, source, language)).dump();
  body += ", \"sim_wall_time_us\": " + std::to_string(report.sim_wall_time.count());
  body += "}";
  return body;
}

HttpReply EvaluationService::evaluate(std::string_view body) const {
  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error&) {
    return error_reply(400, "request body is not valid JSON");
  }
  if (!req.is_object()) return error_reply(400, "request body must be a JSON object");
  for (const char* key : {"problem_id", "language", "source"}) {
    if (!req.contains(key) || !req[key].is_string()) {
      return error_reply(400, std::string("field '") + key + "' is required and must be a string");
    }
  }
  const std::string problem_id = req["problem_id"].get<std::string>();
  const std::string source = req["source"].get<std::string>();
  const auto language = language_from_name(req["language"].get<std::string>());
  if (!language) return error_reply(400, "field 'language' must be \"qasm\" or \"qiskit_python\"");

  const BankEntry* entry = bank_->find(problem_id);
  if (!entry) return error_reply(404, "unknown problem id '" + problem_id + "'");

  EvaluateOptions options;
  options.qubit_cap = config_.qubit_cap;
  options.timeout = config_.timeout;

  EvaluationReport report;
  if (*language == Language::Qasm) {
    report = qcjudge::evaluate(SourceProgram{source, SourceOrigin::NativeQasm}, entry->spec, options);
  } else {
    if (!adapter_) return error_reply(503, "the Python adapter is not configured on this server");
    try {
      report = evaluate_adapter_result(adapter_->execute(source), entry->spec, options);
    } catch (const AdapterUnavailable& e) {
      return error_reply(503, std::string("the Python adapter is unavailable: ") + e.what());
    }
  }
  return {200, evaluation_body(problem_id, report, source, *language), "application/json"};
}

HttpReply EvaluationService::problems() const {
  json list = json::array();
  for (const BankEntry& e : bank_->entries()) {
    json item;
    item["id"] = e.spec.id;
    item["statement"] = e.spec.statement;
    item["constraints"] = constraints_summary(e.spec);
    item["n_qubits"] = e.spec.n_qubits;
    list.push_back(std::move(item));
  }
  return {200, list.dump(), "application/json"};
}

}  // namespace qcjudge
