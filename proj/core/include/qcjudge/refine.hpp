#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcjudge/evaluator.hpp"
#include "qcjudge/problem.hpp"

namespace qcjudge {

inline constexpr std::size_t kDefaultMaxRounds = 3;

struct Generation {
  bool ok = false;
  // Submission text when ok, failure reason otherwise.
  std::string text;

  static Generation success(std::string source) { return {true, std::move(source)}; }
  static Generation failure(std::string reason) { return {false, std::move(reason)}; }
};

// Turns a prompt into a submission. Implementations must not throw; they
// report problems through Generation::failure.
class GeneratorPort {
 public:
  virtual ~GeneratorPort() = default;
  virtual Generation generate(std::string_view prompt) = 0;
  virtual std::string describe() const = 0;
};

// Replays fixed sources in order; once exhausted it keeps returning the last
// one. Records every prompt it was given.
class ScriptedGenerator final : public GeneratorPort {
 public:
  explicit ScriptedGenerator(std::vector<std::string> sources);
  // Every *.qasm file in `directory`, in file-name order.
  static ScriptedGenerator from_directory(const std::filesystem::path& directory);

  Generation generate(std::string_view prompt) override;
  std::string describe() const override;

  const std::vector<std::string>& prompts() const { return prompts_; }
  std::size_t calls() const { return prompts_.size(); }

 private:
  std::vector<std::string> sources_;
  std::vector<std::string> prompts_;
  std::string origin_ = "inline";
};

// Spawns `/bin/sh -c command` per round: prompt on stdin, submission on
// stdout. A nonzero exit status or a timeout is a generator failure.
class CommandGenerator final : public GeneratorPort {
 public:
  explicit CommandGenerator(std::string command, std::chrono::milliseconds timeout = std::chrono::seconds(120));
  Generation generate(std::string_view prompt) override;
  std::string describe() const override;

 private:
  std::string command_;
  std::chrono::milliseconds timeout_;
};

// Posts the prompt as a single user message to a chat-completions style
// endpoint. The bearer token is read from `key_env` at call time.
class HttpGenerator final : public GeneratorPort {
 public:
  HttpGenerator(std::string url, std::string model, std::string key_env = "QCJUDGE_LLM_API_KEY",
                std::chrono::seconds timeout = std::chrono::seconds(300));
  Generation generate(std::string_view prompt) override;
  std::string describe() const override;

  // The first fenced block of a completion, or the whole text when unfenced.
  static std::string extract_code(std::string_view completion);

 private:
  std::string url_;
  std::string model_;
  std::string key_env_;
  std::chrono::seconds timeout_;
};

struct Attempt {
  std::size_t round = 0;
  std::string prompt;
  std::string source;
  EvaluationReport report;
  std::chrono::system_clock::time_point timestamp;
};

enum class SessionOutcome { Solved, Exhausted, GeneratorFailed };

std::string_view outcome_name(SessionOutcome outcome);
std::optional<SessionOutcome> outcome_from_name(std::string_view name);

struct RefinementSession {
  std::string problem_id;
  std::size_t max_rounds = kDefaultMaxRounds;
  std::vector<Attempt> attempts;
  SessionOutcome outcome = SessionOutcome::Exhausted;
  // Set when outcome is GeneratorFailed.
  std::optional<std::string> generator_error;
};

// Append-only JSON-lines log of one session: a "session" header line, one
// "attempt" line per round and a final "outcome" line.
class SessionLogWriter {
 public:
  // Throws std::runtime_error when the file cannot be opened.
  explicit SessionLogWriter(const std::filesystem::path& path);

  void header(std::string_view problem_id, std::size_t max_rounds, std::string_view generator, Language language);
  void attempt(const Attempt& attempt);
  void outcome(const RefinementSession& session);

 private:
  void line(const std::string& text);
  std::ofstream out_;
};

RefinementSession load_session(const std::filesystem::path& path);
// Every *.jsonl file in `directory`, in file-name order.
std::vector<RefinementSession> load_sessions(const std::filesystem::path& directory);

using SubmissionEvaluator = std::function<EvaluationReport(const std::string& source)>;

struct SessionOptions {
  Language language = Language::Qasm;
  // Defaults to native evaluation of QASM against the problem.
  SubmissionEvaluator evaluator;
  EvaluateOptions evaluate_options;
  SessionLogWriter* log = nullptr;
};

// Round 1 sends render_prompt(problem). Round k > 1 sends the same baseline
// followed by render_feedback for round k-1. Stops at the first AC or after
// max_rounds. Throws ContractViolation when max_rounds == 0.
RefinementSession run_session(const ProblemSpec& problem, GeneratorPort& generator, std::size_t max_rounds,
                              const SessionOptions& options = {});

// Prompt for round `round` given the previous attempt (absent for round 1).
std::string round_prompt(const ProblemSpec& problem, const Attempt* previous, Language language);

struct MetricsTable {
  std::size_t sessions = 0;
  std::size_t at_round = 1;
  // Percentages over sessions; the six categories sum to 100.
  double success = 0;
  double runtime_error = 0;
  double gate_violation = 0;
  double module_violation = 0;
  double depth_violation = 0;
  double wrong_output = 0;
  // Entry r-1 is the success rate at round r.
  std::vector<double> success_by_iteration;

  // Four-column view that folds gate and module violations into runtime
  // errors. This grouping is an interpretation, not a measured category.
  struct Folded {
    double success, runtime_error, depth_violation, wrong_output;
  };
  Folded folded_view() const;

  std::string format() const;
};

// A session succeeds at round r iff an attempt with round <= r is AC; a
// failing session is classified by the verdict of attempt min(r, #attempts).
// Sessions with no attempts count as runtime errors. Throws MetricsError on
// an empty session list or at_round == 0.
MetricsTable compute_metrics(const std::vector<RefinementSession>& sessions, std::size_t at_round,
                             std::optional<std::size_t> curve_rounds = std::nullopt);

// Success rate at rounds 1..max_round; non-decreasing.
std::vector<double> success_curve(const std::vector<RefinementSession>& sessions, std::size_t max_round);

// "18.97" style two-decimal percentage.
std::string format_percent(double value);

}  // namespace qcjudge
