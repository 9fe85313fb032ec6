#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "qcjudge/judge.hpp"
#include "qcjudge/transpiler.hpp"

namespace qcjudge {

// Submission language. Qasm is evaluated natively; QiskitPython goes through
// the external adapter first.
enum class Language { Qasm, QiskitPython };

std::string_view language_name(Language language);
std::optional<Language> language_from_name(std::string_view name);

struct ProblemSpec {
  std::string id;
  std::string statement;
  std::size_t n_qubits = 1;
  GateSetPolicy gate_policy = GateSetPolicy::all();
  std::optional<std::size_t> depth_limit;
  JudgeSpec judge;
  // Function skeleton shown to generators.
  std::string code_template;
};

}  // namespace qcjudge
