#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qcjudge/evaluator.hpp"
#include "qcjudge/problem_bank.hpp"

namespace qcjudge {

// ---------------------------------------------------------------------------
// Python adapter protocol
//
// The adapter is an external process: submission source on stdin, one JSON
// line on stdout:
//   {"status": "ok", "qasm": "..."}
//   {"status": "runtime_error", "error_text": "..."}
//   {"status": "module_violation", "error_text": "..."}

struct AdapterResult {
  enum class Status { Ok, RuntimeError, ModuleViolation };
  Status status = Status::RuntimeError;
  std::optional<std::string> qasm;
  std::optional<std::string> error_text;
};

// The adapter could not be reached or broke its protocol.
class AdapterUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws AdapterUnavailable on malformed lines.
AdapterResult parse_adapter_line(std::string_view line);
std::string serialize_adapter_result(const AdapterResult& result);

class AdapterPort {
 public:
  virtual ~AdapterPort() = default;
  virtual AdapterResult execute(std::string_view source) = 0;
};

class SubprocessAdapter final : public AdapterPort {
 public:
  SubprocessAdapter(std::string command, std::chrono::milliseconds timeout);
  AdapterResult execute(std::string_view source) override;

 private:
  std::string command_;
  std::chrono::milliseconds timeout_;
};

// RE and UME come straight from the adapter; an exported circuit is
// evaluated natively.
EvaluationReport evaluate_adapter_result(const AdapterResult& result, const ProblemSpec& problem,
                                         const EvaluateOptions& options = {});

// ---------------------------------------------------------------------------
// Configuration

struct ServiceConfig {
  std::filesystem::path bank = "problems";
  std::string host = "0.0.0.0";
  int port = 8080;
  std::size_t qubit_cap = kMaxQubits;
  std::chrono::milliseconds timeout{10'000};
  // Shell command for the Python adapter; qiskit_python requests get 503
  // when unset.
  std::optional<std::string> adapter_command;
  // When set, requests must carry it in the X-QCJudge-Secret header.
  std::optional<std::string> shared_secret;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

// Reads the JSON config file (keys: bank, host, port, qubit_cap, timeout_ms,
// adapter_command, shared_secret), then applies QCJUDGE_BANK, QCJUDGE_HOST,
// QCJUDGE_PORT, QCJUDGE_QUBIT_CAP, QCJUDGE_TIMEOUT_MS, QCJUDGE_ADAPTER and
// QCJUDGE_SHARED_SECRET from the environment. Throws std::runtime_error on
// malformed values.
ServiceConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env = {});

// ---------------------------------------------------------------------------
// Request handling

inline constexpr std::string_view kSecretHeader = "X-QCJudge-Secret";

struct HttpReply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Stateless request handlers over a read-only bank.
class EvaluationService {
 public:
  EvaluationService(std::shared_ptr<const ProblemBank> bank, ServiceConfig config,
                    std::shared_ptr<AdapterPort> adapter = nullptr);

  // POST /evaluate with body {"problem_id", "language", "source"}.
  HttpReply evaluate(std::string_view body) const;
  // GET /problems: [{"id", "statement", "constraints"}] ordered by id.
  HttpReply problems() const;
  bool authorized(std::optional<std::string_view> secret) const;

  const ServiceConfig& config() const { return config_; }

 private:
  std::shared_ptr<const ProblemBank> bank_;
  ServiceConfig config_;
  std::shared_ptr<AdapterPort> adapter_;
};

// Response body for an evaluation. The "report" member is report_json()
// verbatim.
std::string evaluation_body(std::string_view problem_id, const EvaluationReport& report, std::string_view source,
                            Language language);

class HttpServer {
 public:
  explicit HttpServer(const EvaluationService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without serving. Port 0 picks a free port. Returns the bound
  // port, or -1 on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(); requires a prior bind().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qcjudge
