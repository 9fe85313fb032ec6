#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>

#include "qcjudge/statevector.hpp"

namespace qcjudge {

enum class PhaseMode { Sensitive, Ignored };

inline constexpr double kDefaultJudgeTolerance = 1e-6;

// Acceptance rule for a problem's output state.
//
// exact_state compares against a unit-norm reference. With PhaseMode::Ignored
// it accepts when |<ref|out>| >= 1 - tol; with PhaseMode::Sensitive it
// requires |<ref|out> - 1| < sqrt(2 tol), so a global phase counts as an error.
//
// support_predicate only constrains which basis states carry weight:
// |amp|^2 < tol on every required-zero index and >= tol on every
// required-nonzero index. Other indices are free.
class JudgeSpec {
 public:
  enum class Kind { ExactState, SupportPredicate };

  // Normalizes `reference`; throws ContractViolation on a zero vector.
  static JudgeSpec exact_state(StateVector reference, PhaseMode mode, double tolerance = kDefaultJudgeTolerance);
  // Throws ContractViolation when the sets intersect or an index is out of range.
  static JudgeSpec support_predicate(std::size_t n_qubits, std::set<std::size_t> required_nonzero,
                                     std::set<std::size_t> required_zero,
                                     double tolerance = kDefaultJudgeTolerance);

  Kind kind() const { return kind_; }
  std::size_t n_qubits() const { return n_qubits_; }
  double tolerance() const { return tolerance_; }
  // Support predicates always behave as phase-ignored.
  PhaseMode phase_mode() const { return phase_mode_; }
  // Present for ExactState only.
  const std::optional<StateVector>& reference() const { return reference_; }
  const std::set<std::size_t>& required_nonzero() const { return required_nonzero_; }
  const std::set<std::size_t>& required_zero() const { return required_zero_; }

 private:
  JudgeSpec() = default;

  Kind kind_ = Kind::ExactState;
  std::size_t n_qubits_ = 0;
  double tolerance_ = kDefaultJudgeTolerance;
  PhaseMode phase_mode_ = PhaseMode::Ignored;
  std::optional<StateVector> reference_;
  std::set<std::size_t> required_nonzero_;
  std::set<std::size_t> required_zero_;
};

struct JudgeResult {
  bool match = false;
  // Fidelity and overlap for exact states; the first violated index for
  // support predicates.
  std::string diagnostic;
};

// Throws DimensionMismatch when output and spec widths differ.
JudgeResult judge_state(const StateVector& output, const JudgeSpec& spec);

}  // namespace qcjudge
