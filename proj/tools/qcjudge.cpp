#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "qcjudge/errors.hpp"
#include "qcjudge/problem_bank.hpp"
#include "qcjudge/refine.hpp"
#include "qcjudge/service.hpp"

namespace fs = std::filesystem;
using namespace qcjudge;

namespace {

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot be read");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<fs::path> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

std::unique_ptr<GeneratorPort> make_generator(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--generator", "expected script:, cmd: or http: prefix");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "script") return std::make_unique<ScriptedGenerator>(ScriptedGenerator::from_directory(arg));
  if (kind == "cmd") return std::make_unique<CommandGenerator>(arg);
  if (kind == "http") {
    const auto hash = arg.rfind('#');
    if (hash == std::string::npos) return std::make_unique<HttpGenerator>(arg, "");
    return std::make_unique<HttpGenerator>(arg.substr(0, hash), arg.substr(hash + 1));
  }
  throw CLI::ValidationError("--generator", "unknown generator kind '" + kind + "'");
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Judge quantum circuit submissions against a problem bank"};
  app.require_subcommand(1);

  std::string config_file;
  app.add_option("--config", config_file, "JSON service config")->check(CLI::ExistingFile);

  std::string bank_dir;
  std::string language_name_arg = "qasm";

  auto* eval = app.add_subcommand("evaluate", "Evaluate one submission; exit 0 on AC, 1 otherwise");
  std::string problem_id, submission;
  bool print_feedback = false;
  eval->add_option("problem_id", problem_id)->required();
  eval->add_option("file", submission, "Submission file")->required()->check(CLI::ExistingFile);
  eval->add_option("--bank", bank_dir, "Problem bank directory");
  eval->add_option("--language", language_name_arg, "qasm or qiskit_python")
      ->check(CLI::IsMember({"qasm", "qiskit_python"}));
  eval->add_flag("--feedback", print_feedback, "Also print the refinement feedback");

  auto* serve = app.add_subcommand("serve", "Run the evaluation HTTP service");
  std::optional<int> port;
  std::string host;
  serve->add_option("--bank", bank_dir, "Problem bank directory");
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--host", host);

  auto* refine = app.add_subcommand("refine", "Run one refinement session");
  std::string generator_spec, log_dir;
  std::size_t max_rounds = kDefaultMaxRounds;
  refine->add_option("problem_id", problem_id)->required();
  refine->add_option("--generator", generator_spec, "script:<dir> | cmd:<command> | http:<url>[#model]")->required();
  refine->add_option("--max-rounds", max_rounds)->check(CLI::PositiveNumber);
  refine->add_option("--bank", bank_dir, "Problem bank directory");
  refine->add_option("--log-dir", log_dir, "Directory for the JSONL session log");

  auto* metrics = app.add_subcommand("metrics", "Aggregate session logs");
  std::string session_dir;
  std::size_t at_round = 1;
  std::optional<std::size_t> curve_rounds;
  metrics->add_option("session_dir", session_dir)->required()->check(CLI::ExistingDirectory);
  metrics->add_option("--round", at_round)->check(CLI::PositiveNumber);
  metrics->add_option("--curve", curve_rounds, "Rounds in the success curve")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    ServiceConfig cfg = load_config(optional_path(config_file));
    if (!bank_dir.empty()) cfg.bank = bank_dir;

    if (*eval) {
      const auto bank = load_bank(cfg.bank);
      const BankEntry* entry = bank.find(problem_id);
      if (!entry) {
        std::cerr << "unknown problem id '" << problem_id << "'\n";
        return kExitUsage;
      }
      const Language language = *language_from_name(language_name_arg);
      const std::string source = read_file(submission);
      EvaluateOptions opts{cfg.qubit_cap, cfg.timeout};
      EvaluationReport report;
      if (language == Language::Qasm) {
        report = evaluate(SourceProgram{source, SourceOrigin::NativeQasm}, entry->spec, opts);
      } else {
        if (!cfg.adapter_command) {
          std::cerr << "qiskit_python needs an adapter command (QCJUDGE_ADAPTER or adapter_command)\n";
          return kExitUsage;
        }
        SubprocessAdapter adapter(*cfg.adapter_command, cfg.timeout);
        report = evaluate_adapter_result(adapter.execute(source), entry->spec, opts);
      }
      std::cout << report_json(report) << "\n";
      std::cerr << "verdict: " << verdict_name(report.verdict) << "\n" << report.diagnostic << "\n";
      if (print_feedback && report.verdict != Verdict::AC) {
        std::cout << render_feedback(report, source, language) << "\n";
      }
      return report.verdict == Verdict::AC ? kExitAccepted : kExitRejected;
    }

    if (*serve) {
      if (port) cfg.port = *port;
      if (!host.empty()) cfg.host = host;
      auto bank = std::make_shared<const ProblemBank>(load_bank(cfg.bank));
      EvaluationService service(bank, cfg);
      HttpServer server(service);
      const int bound = server.bind(cfg.host, cfg.port);
      if (bound < 0) {
        std::cerr << "cannot bind " << cfg.host << ":" << cfg.port << "\n";
        return kExitRejected;
      }
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving " << bank->size() << " problems on " << cfg.host << ":" << bound << "\n";
      server.listen();
      g_server = nullptr;
      return kExitAccepted;
    }

    if (*refine) {
      const auto bank = load_bank(cfg.bank);
      const BankEntry* entry = bank.find(problem_id);
      if (!entry) {
        std::cerr << "unknown problem id '" << problem_id << "'\n";
        return kExitUsage;
      }
      auto generator = make_generator(generator_spec);
      std::optional<SessionLogWriter> log;
      SessionOptions options;
      options.evaluate_options = EvaluateOptions{cfg.qubit_cap, cfg.timeout};
      if (!log_dir.empty()) {
        fs::create_directories(log_dir);
        const auto stamp = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::system_clock::now().time_since_epoch())
                               .count();
        const fs::path path = fs::path(log_dir) / (problem_id + "-" + std::to_string(stamp) + ".jsonl");
        log.emplace(path);
        options.log = &*log;
        std::cerr << "log: " << path.string() << "\n";
      }
      const RefinementSession session = run_session(entry->spec, *generator, max_rounds, options);
      for (const Attempt& a : session.attempts) {
        std::cout << "round " << a.round << ": " << verdict_name(a.report.verdict) << "\n";
      }
      std::cout << "outcome: " << outcome_name(session.outcome) << "\n";
      if (session.generator_error) std::cerr << "generator: " << *session.generator_error << "\n";
      return session.outcome == SessionOutcome::Solved ? kExitAccepted : kExitRejected;
    }

    if (*metrics) {
      const auto sessions = load_sessions(session_dir);
      std::cout << compute_metrics(sessions, at_round, curve_rounds).format();
      return kExitAccepted;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
