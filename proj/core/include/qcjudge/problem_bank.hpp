#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcjudge/evaluator.hpp"
#include "qcjudge/problem.hpp"

namespace qcjudge {

// A bundled submission with the verdict its file name promises, e.g.
// "wa_missing_phase.qasm" or "case_study/2_wa.qasm".
struct Fixture {
  // Path relative to the problem's fixtures/ directory.
  std::string name;
  std::optional<Verdict> expected;
  std::string source;
};

struct BankEntry {
  ProblemSpec spec;
  std::filesystem::path directory;
  std::optional<std::string> reference_source;
  std::vector<Fixture> fixtures;
};

// Immutable after load; entries ordered by id.
class ProblemBank {
 public:
  ProblemBank() = default;
  explicit ProblemBank(std::vector<BankEntry> entries);

  const std::vector<BankEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const BankEntry* find(std::string_view id) const;
  std::vector<ProblemSpec> specs() const;

 private:
  std::vector<BankEntry> entries_;
};

// Reads problems/<id>/spec.json, reference.qasm and fixtures/**.qasm.
// Throws LoadError naming the file and field on any schema violation.
ProblemBank load_bank(const std::filesystem::path& directory);

// Parses one spec.json document. `origin` is used in error messages.
ProblemSpec parse_problem(std::string_view json_text, std::string_view origin);
// Inverse of parse_problem.
std::string serialize_problem(const ProblemSpec& spec);

// Verdict promised by a fixture file name: the first '_'-separated token of
// the stem naming a verdict ("wa_x_only" -> WA, "2_wa" -> WA).
std::optional<Verdict> fixture_verdict(std::string_view file_name);

// Constraint lines: allowed gates (if restricted), depth limit (if present)
// and the global-phase sentence.
std::vector<std::string> constraint_lines(const ProblemSpec& problem);
std::string constraints_summary(const ProblemSpec& problem);

// Skeleton shown to generators for the language.
std::string code_template_for(const ProblemSpec& problem, Language language);

// Baseline prompt: problem statement, constraints, code template and the
// instruction to write only the function body.
std::string render_prompt(const ProblemSpec& problem, Language language = Language::QiskitPython);

}  // namespace qcjudge
