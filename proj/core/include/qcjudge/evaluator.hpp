#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "qcjudge/problem.hpp"
#include "qcjudge/qasm.hpp"

namespace qcjudge {

enum class Verdict { AC, RE, UME, UGE, DLE, WA };

std::string_view verdict_name(Verdict verdict);
std::optional<Verdict> verdict_from_name(std::string_view name);

struct EvaluationReport {
  Verdict verdict = Verdict::RE;
  bool runtime_error = false;
  bool gate_violation = false;
  bool depth_violation = false;
  bool state_match = false;
  // Set only for UME. Serialized after the four standard keys.
  bool module_violation = false;
  std::optional<std::size_t> measured_depth;
  // Error text for RE and UME; embedded in feedback.
  std::optional<std::string> error_text;
  // One line per stage: passed, failed (with detail) or unevaluated.
  std::string diagnostic;
  // Informational only; excluded from equality of outcomes.
  std::chrono::microseconds sim_wall_time{0};
};

// Same verdict, flags, depth and error text.
bool same_outcome(const EvaluationReport& a, const EvaluationReport& b);

struct EvaluateOptions {
  std::size_t qubit_cap = kMaxQubits;
  std::chrono::milliseconds timeout{10'000};
};

// Stages run in order of severity and stop at the first failure:
//   parse/validate   -> RE (UME for a disallowed include)
//   gate set         -> UGE
//   depth limit      -> DLE
//   simulate + judge -> WA, or AC
EvaluationReport evaluate(const SourceProgram& source, const ProblemSpec& problem,
                          const EvaluateOptions& options = {});

// Single-line report, e.g.
// { "runtime_error": false, "gate_violation": false, "depth_violation": false, "state_match": true }
// A UME report appends "module_violation": true after the four standard keys.
std::string report_json(const EvaluationReport& report);

// Fence tag used when quoting the previous submission.
std::string_view fence_tag(Language language);

// The refinement prompt fragment for a failed attempt. Throws
// ContractViolation for an AC report.
std::string render_feedback(const EvaluationReport& report, std::string_view previous_source,
                            Language language = Language::QiskitPython);

// The verdict-specific sentence on its own.
std::string feedback_sentence(const EvaluationReport& report);

}  // namespace qcjudge
