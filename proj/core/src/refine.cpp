#include "qcjudge/refine.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcjudge/errors.hpp"
#include "qcjudge/problem_bank.hpp"
#include "qcjudge/subprocess.hpp"

namespace qcjudge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot be read");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json report_to_json(const EvaluationReport& r) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  j["runtime_error"] = r.runtime_error;
  j["gate_violation"] = r.gate_violation;
  j["depth_violation"] = r.depth_violation;
  j["state_match"] = r.state_match;
  j["module_violation"] = r.module_violation;
  j["measured_depth"] = r.measured_depth ? json(*r.measured_depth) : json(nullptr);
  j["error_text"] = r.error_text ? json(*r.error_text) : json(nullptr);
  j["diagnostic"] = r.diagnostic;
  j["sim_wall_time_us"] = r.sim_wall_time.count();
  return j;
}

EvaluationReport report_from_json(const json& j) {
  EvaluationReport r;
  const auto verdict = verdict_from_name(j.at("verdict").get<std::string>());
  if (!verdict) throw std::runtime_error("unknown verdict '" + j.at("verdict").get<std::string>() + "'");
  r.verdict = *verdict;
  r.runtime_error = j.at("runtime_error").get<bool>();
  r.gate_violation = j.at("gate_violation").get<bool>();
  r.depth_violation = j.at("depth_violation").get<bool>();
  r.state_match = j.at("state_match").get<bool>();
  r.module_violation = j.value("module_violation", false);
  if (j.contains("measured_depth") && !j["measured_depth"].is_null()) r.measured_depth = j["measured_depth"].get<std::size_t>();
  if (j.contains("error_text") && !j["error_text"].is_null()) r.error_text = j["error_text"].get<std::string>();
  r.diagnostic = j.value("diagnostic", "");
  r.sim_wall_time = std::chrono::microseconds(j.value("sim_wall_time_us", std::int64_t{0}));
  return r;
}

std::int64_t to_millis(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

}  // namespace

// ---------------------------------------------------------------------------
// Generators

ScriptedGenerator::ScriptedGenerator(std::vector<std::string> sources) : sources_(std::move(sources)) {}

ScriptedGenerator ScriptedGenerator::from_directory(const fs::path& directory) {
  if (!fs::is_directory(directory)) throw std::runtime_error(directory.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(directory))
    if (e.is_regular_file() && e.path().extension() == ".qasm") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<std::string> sources;
  for (const fs::path& f : files) sources.push_back(read_text(f));
  ScriptedGenerator gen(std::move(sources));
  gen.origin_ = directory.string();
  return gen;
}

Generation ScriptedGenerator::generate(std::string_view prompt) {
  prompts_.emplace_back(prompt);
  if (sources_.empty()) return Generation::failure("script is empty");
  const std::size_t i = std::min(prompts_.size() - 1, sources_.size() - 1);
  return Generation::success(sources_[i]);
}

std::string ScriptedGenerator::describe() const { return "script:" + origin_; }

CommandGenerator::CommandGenerator(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {}

Generation CommandGenerator::generate(std::string_view prompt) {
  const ProcessResult r = run_shell(command_, prompt, timeout_);
  if (r.spawn_failed) return Generation::failure("could not start generator: " + r.err);
  if (r.timed_out) return Generation::failure("generator timed out after " + std::to_string(timeout_.count()) + " ms");
  if (r.exit_code != 0) {
    std::string first = r.err.substr(0, r.err.find('\n'));
    return Generation::failure("generator exited with status " + std::to_string(r.exit_code) +
                               (first.empty() ? "" : ": " + first));
  }
  return Generation::success(r.out);
}

std::string CommandGenerator::describe() const { return "cmd:" + command_; }

// ---------------------------------------------------------------------------
// Sessions

std::string_view outcome_name(SessionOutcome outcome) {
  switch (outcome) {
    case SessionOutcome::Solved:
      return "solved";
    case SessionOutcome::Exhausted:
      return "exhausted";
    case SessionOutcome::GeneratorFailed:
      return "generator_failed";
  }
  return "exhausted";
}

std::optional<SessionOutcome> outcome_from_name(std::string_view name) {
  for (SessionOutcome o : {SessionOutcome::Solved, SessionOutcome::Exhausted, SessionOutcome::GeneratorFailed})
    if (outcome_name(o) == name) return o;
  return std::nullopt;
}

std::string round_prompt(const ProblemSpec& problem, const Attempt* previous, Language language) {
  std::string prompt = render_prompt(problem, language);
  if (previous) prompt += "\n\n" + render_feedback(previous->report, previous->source, language);
  return prompt;
}

RefinementSession run_session(const ProblemSpec& problem, GeneratorPort& generator, std::size_t max_rounds,
                              const SessionOptions& options) {
  if (max_rounds == 0) throw ContractViolation("max_rounds must be at least 1");
  const SubmissionEvaluator evaluator =
      options.evaluator ? options.evaluator : [&](const std::string& source) {
        return evaluate(SourceProgram{source, SourceOrigin::NativeQasm}, problem, options.evaluate_options);
      };

  RefinementSession session;
  session.problem_id = problem.id;
  session.max_rounds = max_rounds;
  if (options.log) options.log->header(problem.id, max_rounds, generator.describe(), options.language);

  for (std::size_t round = 1; round <= max_rounds; ++round) {
    const Attempt* previous = session.attempts.empty() ? nullptr : &session.attempts.back();
    std::string prompt = round_prompt(problem, previous, options.language);
    Generation gen = generator.generate(prompt);
    if (!gen.ok) {
      session.outcome = SessionOutcome::GeneratorFailed;
      session.generator_error = gen.text;
      break;
    }
    Attempt attempt;
    attempt.round = round;
    attempt.prompt = std::move(prompt);
    attempt.source = std::move(gen.text);
    attempt.report = evaluator(attempt.source);
    attempt.timestamp = std::chrono::system_clock::now();
    if (options.log) options.log->attempt(attempt);
    session.attempts.push_back(std::move(attempt));
    if (session.attempts.back().report.verdict == Verdict::AC) {
      session.outcome = SessionOutcome::Solved;
      break;
    }
  }
  if (session.outcome != SessionOutcome::Solved && session.outcome != SessionOutcome::GeneratorFailed) {
    session.outcome = SessionOutcome::Exhausted;
  }
  if (options.log) options.log->outcome(session);
  return session;
}

// ---------------------------------------------------------------------------
// Session logs

SessionLogWriter::SessionLogWriter(const fs::path& path) : out_(path, std::ios::app) {
  if (!out_) throw std::runtime_error(path.string() + ": cannot open session log");
}

void SessionLogWriter::line(const std::string& text) {
  out_ << text << '\n';
  out_.flush();
}

void SessionLogWriter::header(std::string_view problem_id, std::size_t max_rounds, std::string_view generator,
                              Language language) {
  json j;
  j["type"] = "session";
  j["problem_id"] = problem_id;
  j["max_rounds"] = max_rounds;
  j["generator"] = generator;
  j["language"] = language_name(language);
  j["timestamp_ms"] = to_millis(std::chrono::system_clock::now());
  line(j.dump());
}

void SessionLogWriter::attempt(const Attempt& a) {
  json j;
  j["type"] = "attempt";
  j["round"] = a.round;
  j["timestamp_ms"] = to_millis(a.timestamp);
  j["prompt"] = a.prompt;
  j["source"] = a.source;
  j["report"] = report_to_json(a.report);
  j["report_text"] = report_json(a.report);
  line(j.dump());
}

void SessionLogWriter::outcome(const RefinementSession& s) {
  json j;
  j["type"] = "outcome";
  j["outcome"] = outcome_name(s.outcome);
  j["rounds_used"] = s.attempts.size();
  j["generator_error"] = s.generator_error ? json(*s.generator_error) : json(nullptr);
  j["timestamp_ms"] = to_millis(std::chrono::system_clock::now());
  line(j.dump());
}

RefinementSession load_session(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot be read");
  RefinementSession s;
  bool have_header = false, have_outcome = false;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    try {
      const json j = json::parse(text);
      const std::string type = j.at("type").get<std::string>();
      if (type == "session") {
        s.problem_id = j.at("problem_id").get<std::string>();
        s.max_rounds = j.at("max_rounds").get<std::size_t>();
        have_header = true;
      } else if (type == "attempt") {
        Attempt a;
        a.round = j.at("round").get<std::size_t>();
        a.prompt = j.value("prompt", "");
        a.source = j.value("source", "");
        a.report = report_from_json(j.at("report"));
        a.timestamp = std::chrono::system_clock::time_point(std::chrono::milliseconds(j.value("timestamp_ms", std::int64_t{0})));
        s.attempts.push_back(std::move(a));
      } else if (type == "outcome") {
        const auto o = outcome_from_name(j.at("outcome").get<std::string>());
        if (!o) throw std::runtime_error("unknown outcome");
        s.outcome = *o;
        if (j.contains("generator_error") && !j["generator_error"].is_null()) {
          s.generator_error = j["generator_error"].get<std::string>();
        }
        have_outcome = true;
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw std::runtime_error(path.string() + ": missing session header line");
  if (!have_outcome) {
    // Interrupted session: infer from what was recorded.
    s.outcome = !s.attempts.empty() && s.attempts.back().report.verdict == Verdict::AC ? SessionOutcome::Solved
                                                                                       : SessionOutcome::Exhausted;
  }
  return s;
}

std::vector<RefinementSession> load_sessions(const fs::path& directory) {
  if (!fs::is_directory(directory)) throw std::runtime_error(directory.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(directory))
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<RefinementSession> out;
  for (const fs::path& f : files) out.push_back(load_session(f));
  return out;
}

// ---------------------------------------------------------------------------
// Metrics

namespace {

bool solved_by(const RefinementSession& s, std::size_t round) {
  for (const Attempt& a : s.attempts)
    if (a.round <= round && a.report.verdict == Verdict::AC) return true;
  return false;
}

}  // namespace

std::vector<double> success_curve(const std::vector<RefinementSession>& sessions, std::size_t max_round) {
  std::vector<double> curve(max_round, 0.0);
  if (sessions.empty()) return curve;
  for (std::size_t r = 1; r <= max_round; ++r) {
    const auto solved = std::count_if(sessions.begin(), sessions.end(), [&](const auto& s) { return solved_by(s, r); });
    curve[r - 1] = 100.0 * static_cast<double>(solved) / static_cast<double>(sessions.size());
  }
  return curve;
}

MetricsTable compute_metrics(const std::vector<RefinementSession>& sessions, std::size_t at_round,
                             std::optional<std::size_t> curve_rounds) {
  if (sessions.empty()) throw MetricsError("metrics are undefined for an empty session list");
  if (at_round == 0) throw MetricsError("at_round must be at least 1");

  std::array<std::size_t, 6> counts{};  // indexed by Verdict
  for (const RefinementSession& s : sessions) {
    if (solved_by(s, at_round)) {
      ++counts[static_cast<std::size_t>(Verdict::AC)];
    } else if (s.attempts.empty()) {
      ++counts[static_cast<std::size_t>(Verdict::RE)];
    } else {
      const Attempt& a = s.attempts[std::min(at_round, s.attempts.size()) - 1];
      ++counts[static_cast<std::size_t>(a.report.verdict)];
    }
  }
  const double n = static_cast<double>(sessions.size());
  const auto rate = [&](Verdict v) { return 100.0 * static_cast<double>(counts[static_cast<std::size_t>(v)]) / n; };

  MetricsTable t;
  t.sessions = sessions.size();
  t.at_round = at_round;
  t.success = rate(Verdict::AC);
  t.runtime_error = rate(Verdict::RE);
  t.gate_violation = rate(Verdict::UGE);
  t.module_violation = rate(Verdict::UME);
  t.depth_violation = rate(Verdict::DLE);
  t.wrong_output = rate(Verdict::WA);

  std::size_t rounds = curve_rounds.value_or(at_round);
  if (!curve_rounds)
    for (const RefinementSession& s : sessions) rounds = std::max(rounds, s.max_rounds);
  t.success_by_iteration = success_curve(sessions, rounds);
  return t;
}

MetricsTable::Folded MetricsTable::folded_view() const {
  return {success, runtime_error + gate_violation + module_violation, depth_violation, wrong_output};
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string MetricsTable::format() const {
  std::string out;
  out += "sessions: " + std::to_string(sessions) + "\n";
  out += "round: " + std::to_string(at_round) + "\n";
  out += "success: " + format_percent(success) + "%\n";
  out += "runtime_error: " + format_percent(runtime_error) + "%\n";
  out += "gate_violation: " + format_percent(gate_violation) + "%\n";
  out += "module_violation: " + format_percent(module_violation) + "%\n";
  out += "depth_violation: " + format_percent(depth_violation) + "%\n";
  out += "wrong_output: " + format_percent(wrong_output) + "%\n";
  out += "success_by_iteration: [";
  for (std::size_t i = 0; i < success_by_iteration.size(); ++i) {
    if (i) out += ", ";
    out += format_percent(success_by_iteration[i]) + "%";
  }
  out += "]\n";
  const Folded f = folded_view();
  out += "folded (gate and module violations counted as runtime errors): success " + format_percent(f.success) +
         "%, runtime_error " + format_percent(f.runtime_error) + "%, depth_violation " +
         format_percent(f.depth_violation) + "%, wrong_output " + format_percent(f.wrong_output) + "%\n";
  return out;
}

}  // namespace qcjudge
