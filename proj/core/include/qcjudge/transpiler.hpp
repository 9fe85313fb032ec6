#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qcjudge/circuit.hpp"

namespace qcjudge {

enum class GateCheckMode {
  Strict,   // every raw gate must be allowed
  Lenient,  // a disallowed gate passes if its decomposition uses only allowed kinds
};

class GateSetPolicy {
 public:
  // Every GateKind allowed.
  static GateSetPolicy all(GateCheckMode mode = GateCheckMode::Strict);
  // Throws ContractViolation when `allowed` is empty.
  static GateSetPolicy only(std::set<GateKind> allowed, GateCheckMode mode = GateCheckMode::Strict);

  bool allows_all() const { return !allowed_.has_value(); }
  bool allows(GateKind kind) const { return !allowed_ || allowed_->count(kind) > 0; }
  // Empty when allows_all().
  const std::set<GateKind>& allowed() const;
  GateCheckMode mode() const { return mode_; }

  friend bool operator==(const GateSetPolicy&, const GateSetPolicy&) = default;

 private:
  GateSetPolicy(std::optional<std::set<GateKind>> allowed, GateCheckMode mode)
      : allowed_(std::move(allowed)), mode_(mode) {}

  std::optional<std::set<GateKind>> allowed_;
  GateCheckMode mode_;
};

// Decomposition always targets this set; it must be contained in any basis.
const std::set<GateKind>& universal_basis();

// Expands one gate into an equivalent sequence (equal up to global phase).
// The rule receives the gate's operands and parameters.
using DecompositionRule = std::function<std::vector<GateInstance>(const GateInstance&)>;

// Per-kind rewrite templates. Rules may emit kinds that have rules of their
// own; expansion recurses until every gate is in the requested basis.
class DecompositionRules {
 public:
  // Rules for every non-universal kind in the engine's gate universe.
  static const DecompositionRules& standard();

  void add(GateKind kind, DecompositionRule rule);
  const DecompositionRule* find(GateKind kind) const;
  std::vector<GateKind> kinds() const;

 private:
  std::map<GateKind, DecompositionRule> rules_;
};

// Rewrites every gate outside `basis`. Throws ContractViolation when
// basis does not contain universal_basis(), and UnsupportedDecomposition when
// a gate has no rule.
Circuit decompose(const Circuit& circuit, const std::set<GateKind>& basis,
                  const DecompositionRules& rules = DecompositionRules::standard());

// Positions of gates that violate the policy. Empty means ok.
std::vector<std::size_t> check_gates(const Circuit& circuit, const GateSetPolicy& policy,
                                     const DecompositionRules& rules = DecompositionRules::standard());

// Longest chain in the dependency DAG where two gates conflict iff they share
// a qubit. Each gate counts once regardless of arity.
std::size_t circuit_depth(const Circuit& circuit);

struct DepthReport {
  std::size_t depth = 0;
  std::optional<std::size_t> limit;
  bool violated = false;
};

// violated iff limit is present and depth > limit.
DepthReport check_depth(const Circuit& circuit, std::optional<std::size_t> limit);

}  // namespace qcjudge
