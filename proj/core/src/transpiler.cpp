#include "qcjudge/transpiler.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "qcjudge/errors.hpp"

namespace qcjudge {

namespace {

using std::numbers::pi;

GateInstance g1(GateKind kind, std::size_t q, std::vector<double> params = {}) {
  return GateInstance{kind, {q}, std::move(params)};
}

GateInstance cx(std::size_t c, std::size_t t) { return GateInstance{GateKind::CX, {c, t}, {}}; }

DecompositionRule phase_as_rz(double angle) {
  return [angle](const GateInstance& g) { return std::vector{g1(GateKind::RZ, g.qubits[0], {angle})}; };
}

DecompositionRules make_standard() {
  DecompositionRules r;
  r.add(GateKind::Y, [](const GateInstance& g) { return std::vector{g1(GateKind::RY, g.qubits[0], {pi})}; });
  r.add(GateKind::Z, phase_as_rz(pi));
  r.add(GateKind::S, phase_as_rz(pi / 2));
  r.add(GateKind::Sdg, phase_as_rz(-pi / 2));
  r.add(GateKind::T, phase_as_rz(pi / 4));
  r.add(GateKind::Tdg, phase_as_rz(-pi / 4));
  r.add(GateKind::P, [](const GateInstance& g) { return std::vector{g1(GateKind::RZ, g.qubits[0], {g.params[0]})}; });
  r.add(GateKind::RX, [](const GateInstance& g) {
    const std::size_t q = g.qubits[0];
    return std::vector{g1(GateKind::H, q), g1(GateKind::RZ, q, {g.params[0]}), g1(GateKind::H, q)};
  });
  // U(theta, phi, lambda) = RZ(phi) RY(theta) RZ(lambda) up to phase.
  r.add(GateKind::U, [](const GateInstance& g) {
    const std::size_t q = g.qubits[0];
    return std::vector{g1(GateKind::RZ, q, {g.params[2]}), g1(GateKind::RY, q, {g.params[0]}),
                       g1(GateKind::RZ, q, {g.params[1]})};
  });
  r.add(GateKind::CZ, [](const GateInstance& g) {
    const std::size_t c = g.qubits[0], t = g.qubits[1];
    return std::vector{g1(GateKind::H, t), cx(c, t), g1(GateKind::H, t)};
  });
  // H = RY(-pi/4) X RY(pi/4).
  r.add(GateKind::CH, [](const GateInstance& g) {
    const std::size_t c = g.qubits[0], t = g.qubits[1];
    return std::vector{g1(GateKind::RY, t, {pi / 4}), cx(c, t), g1(GateKind::RY, t, {-pi / 4})};
  });
  r.add(GateKind::CRY, [](const GateInstance& g) {
    const std::size_t c = g.qubits[0], t = g.qubits[1];
    const double half = g.params[0] / 2;
    return std::vector{g1(GateKind::RY, t, {half}), cx(c, t), g1(GateKind::RY, t, {-half}), cx(c, t)};
  });
  r.add(GateKind::CRZ, [](const GateInstance& g) {
    const std::size_t c = g.qubits[0], t = g.qubits[1];
    const double half = g.params[0] / 2;
    return std::vector{g1(GateKind::RZ, t, {half}), cx(c, t), g1(GateKind::RZ, t, {-half}), cx(c, t)};
  });
  r.add(GateKind::CP, [](const GateInstance& g) {
    const std::size_t c = g.qubits[0], t = g.qubits[1];
    const double half = g.params[0] / 2;
    return std::vector{g1(GateKind::RZ, c, {half}), g1(GateKind::RZ, t, {half}), cx(c, t),
                       g1(GateKind::RZ, t, {-half}), cx(c, t)};
  });
  r.add(GateKind::CCX, [](const GateInstance& g) {
    const std::size_t a = g.qubits[0], b = g.qubits[1], t = g.qubits[2];
    return std::vector{g1(GateKind::H, t),   cx(b, t),          g1(GateKind::Tdg, t), cx(a, t),
                       g1(GateKind::T, t),   cx(b, t),          g1(GateKind::Tdg, t), cx(a, t),
                       g1(GateKind::T, b),   g1(GateKind::T, t), g1(GateKind::H, t),   cx(a, b),
                       g1(GateKind::T, a),   g1(GateKind::Tdg, b), cx(a, b)};
  });
  r.add(GateKind::SWAP, [](const GateInstance& g) {
    const std::size_t a = g.qubits[0], b = g.qubits[1];
    return std::vector{cx(a, b), cx(b, a), cx(a, b)};
  });
  return r;
}

constexpr int kMaxExpansionDepth = 16;

// Appends the expansion of `gate` to `out`. Returns false when some gate on
// the way has no rule; `missing` then names it.
bool expand(const GateInstance& gate, const std::set<GateKind>& basis, const DecompositionRules& rules,
            std::vector<GateInstance>& out, GateKind& missing, int depth = 0) {
  if (basis.count(gate.kind)) {
    out.push_back(gate);
    return true;
  }
  const DecompositionRule* rule = rules.find(gate.kind);
  if (!rule || depth >= kMaxExpansionDepth) {
    missing = gate.kind;
    return false;
  }
  for (const GateInstance& sub : (*rule)(gate))
    if (!expand(sub, basis, rules, out, missing, depth + 1)) return false;
  return true;
}

}  // namespace

GateSetPolicy GateSetPolicy::all(GateCheckMode mode) { return GateSetPolicy(std::nullopt, mode); }

GateSetPolicy GateSetPolicy::only(std::set<GateKind> allowed, GateCheckMode mode) {
  if (allowed.empty()) throw ContractViolation("allowed gate set must not be empty");
  return GateSetPolicy(std::move(allowed), mode);
}

const std::set<GateKind>& GateSetPolicy::allowed() const {
  static const std::set<GateKind> kEmpty;
  return allowed_ ? *allowed_ : kEmpty;
}

const std::set<GateKind>& universal_basis() {
  static const std::set<GateKind> kBasis{GateKind::CX, GateKind::RY, GateKind::RZ, GateKind::X, GateKind::H};
  return kBasis;
}

const DecompositionRules& DecompositionRules::standard() {
  static const DecompositionRules kRules = make_standard();
  return kRules;
}

void DecompositionRules::add(GateKind kind, DecompositionRule rule) { rules_[kind] = std::move(rule); }

const DecompositionRule* DecompositionRules::find(GateKind kind) const {
  auto it = rules_.find(kind);
  return it == rules_.end() ? nullptr : &it->second;
}

std::vector<GateKind> DecompositionRules::kinds() const {
  std::vector<GateKind> out;
  for (const auto& [kind, _] : rules_) out.push_back(kind);
  return out;
}

Circuit decompose(const Circuit& circuit, const std::set<GateKind>& basis, const DecompositionRules& rules) {
  if (!std::includes(basis.begin(), basis.end(), universal_basis().begin(), universal_basis().end())) {
    throw ContractViolation("decomposition basis must contain cx, ry, rz, x and h");
  }
  std::vector<GateInstance> out;
  out.reserve(circuit.size());
  for (const GateInstance& g : circuit.gates()) {
    GateKind missing{};
    if (!expand(g, basis, rules, out, missing)) {
      throw UnsupportedDecomposition("no decomposition rule for gate '" + std::string(gate_name(missing)) + "'");
    }
  }
  return Circuit(circuit.n_qubits(), std::move(out));
}

std::vector<std::size_t> check_gates(const Circuit& circuit, const GateSetPolicy& policy,
                                     const DecompositionRules& rules) {
  std::vector<std::size_t> offending;
  if (policy.allows_all()) return offending;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const GateInstance& g = circuit.gates()[i];
    if (policy.allows(g.kind)) continue;
    if (policy.mode() == GateCheckMode::Strict) {
      offending.push_back(i);
      continue;
    }
    std::vector<GateInstance> lowered;
    GateKind missing{};
    const bool ok = expand(g, universal_basis(), rules, lowered, missing) &&
                    std::all_of(lowered.begin(), lowered.end(),
                                [&](const GateInstance& sub) { return policy.allows(sub.kind); });
    if (!ok) offending.push_back(i);
  }
  return offending;
}

std::size_t circuit_depth(const Circuit& circuit) {
  // Gate order is a topological order of the DAG, so a single pass that
  // tracks the deepest chain ending on each qubit gives the longest path.
  std::vector<std::size_t> frontier(circuit.n_qubits(), 0);
  std::size_t depth = 0;
  for (const GateInstance& g : circuit.gates()) {
    std::size_t level = 0;
    for (std::size_t q : g.qubits) level = std::max(level, frontier.at(q));
    ++level;
    for (std::size_t q : g.qubits) frontier[q] = level;
    depth = std::max(depth, level);
  }
  return depth;
}

DepthReport check_depth(const Circuit& circuit, std::optional<std::size_t> limit) {
  DepthReport report;
  report.depth = circuit_depth(circuit);
  report.limit = limit;
  report.violated = limit.has_value() && report.depth > *limit;
  return report;
}

}  // namespace qcjudge
