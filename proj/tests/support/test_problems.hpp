#pragma once

#include <complex>
#include <filesystem>
#include <string>

#include "qcjudge/problem.hpp"
#include "qcjudge/qasm.hpp"

namespace testing_support {

inline std::filesystem::path bank_dir() { return std::filesystem::path(QCJUDGE_SOURCE_DIR) / "problems"; }

// Standard header, one register of n qubits, then `body`.
inline qcjudge::SourceProgram qasm(std::size_t n, const std::string& body) {
  return {"OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(n) + "];\n" + body,
          qcjudge::SourceOrigin::NativeQasm};
}

// Prepare i|1> from |0>; global phase counts.
inline qcjudge::ProblemSpec phase_sensitive_i1() {
  qcjudge::StateVector ref(1, {0, std::complex<double>(0, 1)});
  return qcjudge::ProblemSpec{
      .id = "I1",
      .statement = "Prepare i|1>.",
      .n_qubits = 1,
      .judge = qcjudge::JudgeSpec::exact_state(ref, qcjudge::PhaseMode::Sensitive),
  };
}

// Bell pair from {h, cx} within `depth`.
inline qcjudge::ProblemSpec bell(std::optional<std::size_t> depth = 2,
                                 qcjudge::GateSetPolicy policy = qcjudge::GateSetPolicy::only(
                                     {qcjudge::GateKind::H, qcjudge::GateKind::CX})) {
  qcjudge::StateVector ref(2, {1, 0, 0, 1});
  return qcjudge::ProblemSpec{
      .id = "BELL",
      .statement = "Prepare a Bell pair.",
      .n_qubits = 2,
      .gate_policy = std::move(policy),
      .depth_limit = depth,
      .judge = qcjudge::JudgeSpec::exact_state(ref, qcjudge::PhaseMode::Ignored),
  };
}

// Support on |00>, |10>, |01> and none on |11>.
inline qcjudge::ProblemSpec three_term_support() {
  return qcjudge::ProblemSpec{
      .id = "SUPPORT3",
      .statement = "Prepare a0|00> + a1|10> + a2|01>.",
      .n_qubits = 2,
      .judge = qcjudge::JudgeSpec::support_predicate(2, {0, 2, 1}, {3}),
  };
}

}  // namespace testing_support
