#include "qcjudge/evaluator.hpp"

#include <algorithm>
#include <array>
#include <variant>

#include "qcjudge/errors.hpp"
#include "qcjudge/statevector.hpp"

namespace qcjudge {

namespace {

constexpr std::array<std::string_view, 6> kVerdictNames{"AC", "RE", "UME", "UGE", "DLE", "WA"};

const char* flag(bool b) { return b ? "true" : "false"; }

class StageLog {
 public:
  void pass(std::string_view stage, std::string_view detail = {}) {
    add(stage, detail.empty() ? "passed" : "passed (" + std::string(detail) + ")");
  }
  void fail(std::string_view stage, std::string_view detail) { add(stage, "failed (" + std::string(detail) + ")"); }
  void skip(std::string_view stage) { add(stage, "unevaluated"); }
  std::string str() const { return text_; }

 private:
  void add(std::string_view stage, const std::string& what) {
    if (!text_.empty()) text_ += '\n';
    text_ += std::string(stage) + ": " + what;
  }
  std::string text_;
};

EvaluationReport runtime_failure(std::string error, StageLog& log) {
  EvaluationReport r;
  r.verdict = Verdict::RE;
  r.runtime_error = true;
  log.fail("runtime", error);
  log.skip("gate-set");
  log.skip("depth");
  log.skip("state");
  r.error_text = std::move(error);
  r.diagnostic = log.str();
  return r;
}

}  // namespace

std::string_view verdict_name(Verdict verdict) { return kVerdictNames[static_cast<std::size_t>(verdict)]; }

std::optional<Verdict> verdict_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kVerdictNames.size(); ++i)
    if (kVerdictNames[i] == name) return static_cast<Verdict>(i);
  return std::nullopt;
}

bool same_outcome(const EvaluationReport& a, const EvaluationReport& b) {
  return a.verdict == b.verdict && a.runtime_error == b.runtime_error && a.gate_violation == b.gate_violation &&
         a.depth_violation == b.depth_violation && a.state_match == b.state_match &&
         a.module_violation == b.module_violation && a.measured_depth == b.measured_depth &&
         a.error_text == b.error_text && a.diagnostic == b.diagnostic;
}

EvaluationReport evaluate(const SourceProgram& source, const ProblemSpec& problem, const EvaluateOptions& options) {
  StageLog log;
  ParseResult parsed = parse(source);
  if (auto* err = std::get_if<FrontendError>(&parsed)) {
    if (err->category == FrontendErrorCategory::UnsupportedConstruct && err->construct == "include") {
      EvaluationReport r;
      r.verdict = Verdict::UME;
      r.module_violation = true;
      r.error_text = err->to_string();
      log.fail("runtime", "unauthorized module: " + err->message);
      log.skip("gate-set");
      log.skip("depth");
      log.skip("state");
      r.diagnostic = log.str();
      return r;
    }
    return runtime_failure(err->to_string(), log);
  }
  const ParsedProgram& program = std::get<ParsedProgram>(parsed);
  const Circuit& circuit = program.circuit;

  if (auto violations = validate(circuit); !violations.empty()) {
    return runtime_failure(violations.front().message, log);
  }
  if (circuit.n_qubits() != problem.n_qubits) {
    return runtime_failure("circuit declares " + std::to_string(circuit.n_qubits()) + " qubit(s), problem requires " +
                               std::to_string(problem.n_qubits),
                           log);
  }
  const std::size_t cap = std::min(options.qubit_cap, kMaxQubits);
  if (circuit.n_qubits() > cap) {
    return runtime_failure("circuit uses " + std::to_string(circuit.n_qubits()) +
                               " qubits, above the simulator cap of " + std::to_string(cap),
                           log);
  }
  log.pass("runtime");

  EvaluationReport r;
  if (!program.foreign.empty() || !check_gates(circuit, problem.gate_policy).empty()) {
    std::string detail;
    if (!program.foreign.empty()) {
      const ForeignInstruction& f = program.foreign.front();
      detail = "'" + f.name + "' on line " + std::to_string(f.line) + " is not a quantum gate";
    } else {
      const std::size_t pos = check_gates(circuit, problem.gate_policy).front();
      detail = "gate '" + std::string(gate_name(circuit.gates()[pos].kind)) + "' at position " + std::to_string(pos) +
               " is not in the allowed set";
    }
    r.verdict = Verdict::UGE;
    r.gate_violation = true;
    log.fail("gate-set", detail);
    log.skip("depth");
    log.skip("state");
    r.diagnostic = log.str();
    return r;
  }
  log.pass("gate-set");

  const DepthReport depth = check_depth(circuit, problem.depth_limit);
  r.measured_depth = depth.depth;
  const std::string depth_detail =
      "depth " + std::to_string(depth.depth) + (depth.limit ? ", limit " + std::to_string(*depth.limit) : ", no limit");
  if (depth.violated) {
    r.verdict = Verdict::DLE;
    r.depth_violation = true;
    log.fail("depth", depth_detail);
    log.skip("state");
    r.diagnostic = log.str();
    return r;
  }
  log.pass("depth", depth_detail);

  RunOptions run_options;
  run_options.qubit_cap = cap;
  const auto start = std::chrono::steady_clock::now();
  run_options.deadline = start + options.timeout;
  try {
    const StateVector out = run(circuit, run_options);
    r.sim_wall_time = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
    const JudgeResult judged = judge_state(out, problem.judge);
    r.state_match = judged.match;
    r.verdict = judged.match ? Verdict::AC : Verdict::WA;
    if (judged.match) {
      log.pass("state", judged.diagnostic);
    } else {
      log.fail("state", judged.diagnostic);
    }
  } catch (const TimeoutError&) {
    StageLog tlog;
    return runtime_failure("evaluation timed out after " + std::to_string(options.timeout.count()) + " ms", tlog);
  } catch (const ResourceError& e) {
    StageLog rlog;
    return runtime_failure(e.what(), rlog);
  }
  r.diagnostic = log.str();
  return r;
}

std::string report_json(const EvaluationReport& report) {
  std::string out = "{ \"runtime_error\": ";
  out += flag(report.runtime_error);
  out += ", \"gate_violation\": ";
  out += flag(report.gate_violation);
  out += ", \"depth_violation\": ";
  out += flag(report.depth_violation);
  out += ", \"state_match\": ";
  out += flag(report.state_match);
  if (report.module_violation) out += ", \"module_violation\": true";
  out += " }";
  return out;
}

std::string_view fence_tag(Language language) { return language == Language::Qasm ? "qasm" : "python"; }

std::string feedback_sentence(const EvaluationReport& report) {
  switch (report.verdict) {
    case Verdict::WA:
      return "This is wrong. Try again.";
    case Verdict::DLE:
      return "The circuit depth exceeded the given constraint. Please revise your implementation to improve "
             "efficiency. Try again.";
    case Verdict::UME:
      return "Unauthorized modules has been used. Try again.";
    case Verdict::UGE:
      return "An unauthorized quantum gate has been used. Try again.";
    case Verdict::RE:
      return "The occurring error is: " + report.error_text.value_or("unknown error") + ". Try again.";
    case Verdict::AC:
      break;
  }
  throw ContractViolation("no feedback for an accepted submission");
}

std::string render_feedback(const EvaluationReport& report, std::string_view previous_source, Language language) {
  if (report.verdict == Verdict::AC) throw ContractViolation("no feedback for an accepted submission");
  std::string out = "Your answer was\n```";
  out += fence_tag(language);
  out += '\n';
  out += previous_source;
  if (previous_source.empty() || previous_source.back() != '\n') out += '\n';
  out += "```\n";
  out += feedback_sentence(report);
  return out;
}

}  // namespace qcjudge
