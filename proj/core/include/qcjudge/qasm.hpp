#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcjudge/circuit.hpp"

namespace qcjudge {

enum class SourceOrigin { NativeQasm, AdapterExport };

struct SourceProgram {
  std::string text;
  SourceOrigin origin = SourceOrigin::NativeQasm;
};

enum class FrontendErrorCategory { Lex, Parse, Semantic, UnsupportedConstruct };

struct FrontendError {
  FrontendErrorCategory category;
  std::size_t line;  // 1-based
  std::string message;
  // For UnsupportedConstruct: the keyword that triggered it ("include",
  // "measure", "creg", ...). Empty otherwise.
  std::string construct;

  // "line N: message"
  std::string to_string() const;
};

std::string_view category_name(FrontendErrorCategory category);

// State-injection statements such as `initialize(...) q[0],q[1];` are not
// gates. The frontend keeps them out of the Circuit and records them here so
// the gate-set stage can reject the submission.
struct ForeignInstruction {
  std::string name;
  std::size_t line;
  // Number of circuit gates that precede this instruction.
  std::size_t position;
  std::vector<std::size_t> qubits;
};

struct ParsedProgram {
  Circuit circuit;
  std::vector<ForeignInstruction> foreign;
};

using ParseResult = std::variant<ParsedProgram, FrontendError>;

// Names treated as ForeignInstruction rather than unknown gates.
bool is_foreign_instruction(std::string_view name);

ParseResult parse(const SourceProgram& source);

// Canonical text of a circuit; parse(emit(c)) reproduces c exactly.
SourceProgram emit(const Circuit& circuit);

}  // namespace qcjudge
