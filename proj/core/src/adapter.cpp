#include <nlohmann/json.hpp>

#include "qcjudge/service.hpp"
#include "qcjudge/subprocess.hpp"

namespace qcjudge {

using nlohmann::json;

AdapterResult parse_adapter_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error&) {
    throw AdapterUnavailable("adapter produced a non-JSON line");
  }
  if (!j.is_object() || !j.contains("status") || !j["status"].is_string()) {
    throw AdapterUnavailable("adapter reply lacks a status");
  }
  AdapterResult r;
  const std::string status = j["status"].get<std::string>();
  const auto text = [&](const char* key) -> std::optional<std::string> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw AdapterUnavailable(std::string("adapter field '") + key + "' is not a string");
    return it->get<std::string>();
  };
  if (status == "ok") {
    r.status = AdapterResult::Status::Ok;
    r.qasm = text("qasm");
    if (!r.qasm) throw AdapterUnavailable("adapter reported ok without qasm");
  } else if (status == "runtime_error" || status == "module_violation") {
    r.status = status == "runtime_error" ? AdapterResult::Status::RuntimeError : AdapterResult::Status::ModuleViolation;
    r.error_text = text("error_text");
    if (!r.error_text) throw AdapterUnavailable("adapter reported " + status + " without error_text");
  } else {
    throw AdapterUnavailable("adapter reported unknown status '" + status + "'");
  }
  return r;
}

std::string serialize_adapter_result(const AdapterResult& result) {
  json j;
  switch (result.status) {
    case AdapterResult::Status::Ok:
      j["status"] = "ok";
      j["qasm"] = result.qasm.value_or("");
      break;
    case AdapterResult::Status::RuntimeError:
      j["status"] = "runtime_error";
      j["error_text"] = result.error_text.value_or("");
      break;
    case AdapterResult::Status::ModuleViolation:
      j["status"] = "module_violation";
      j["error_text"] = result.error_text.value_or("");
      break;
  }
  return j.dump();
}

SubprocessAdapter::SubprocessAdapter(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {}

AdapterResult SubprocessAdapter::execute(std::string_view source) {
  const ProcessResult r = run_shell(command_, source, timeout_);
  if (r.spawn_failed) throw AdapterUnavailable("could not start adapter: " + r.err);
  if (r.timed_out) {
    return AdapterResult{AdapterResult::Status::RuntimeError, std::nullopt,
                         "execution timed out after " + std::to_string(timeout_.count()) + " ms"};
  }
  if (r.exit_code == 126 || r.exit_code == 127) throw AdapterUnavailable("adapter command not found: " + command_);
  const std::size_t end = r.out.find('\n');
  const std::string line = r.out.substr(0, end);
  if (line.empty()) {
    throw AdapterUnavailable("adapter exited with status " + std::to_string(r.exit_code) + " and no reply");
  }
  return parse_adapter_line(line);
}

EvaluationReport evaluate_adapter_result(const AdapterResult& result, const ProblemSpec& problem,
                                         const EvaluateOptions& options) {
  if (result.status == AdapterResult::Status::Ok) {
    return evaluate(SourceProgram{result.qasm.value_or(""), SourceOrigin::AdapterExport}, problem, options);
  }
  EvaluationReport r;
  const std::string text = result.error_text.value_or("unknown error");
  if (result.status == AdapterResult::Status::ModuleViolation) {
    r.verdict = Verdict::UME;
    r.module_violation = true;
    r.diagnostic = "runtime: failed (unauthorized module: " + text + ")";
  } else {
    r.verdict = Verdict::RE;
    r.runtime_error = true;
    r.diagnostic = "runtime: failed (" + text + ")";
  }
  r.diagnostic += "\ngate-set: unevaluated\ndepth: unevaluated\nstate: unevaluated";
  r.error_text = text;
  return r;
}

}  // namespace qcjudge
