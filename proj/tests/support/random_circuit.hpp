#pragma once

#include <algorithm>
#include <numbers>
#include <random>
#include <vector>

#include "qcjudge/circuit.hpp"

namespace testing_support {

// Uniform over all gate kinds that fit the register, distinct random operands
// and angles in [-2pi, 2pi].
inline qcjudge::GateInstance random_gate(std::mt19937& rng, std::size_t n_qubits) {
  std::vector<qcjudge::GateKind> kinds;
  for (auto k : qcjudge::all_gate_kinds())
    if (qcjudge::gate_arity(k) <= n_qubits) kinds.push_back(k);
  const auto kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
  std::vector<std::size_t> qubits(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) qubits[q] = q;
  std::shuffle(qubits.begin(), qubits.end(), rng);
  qubits.resize(qcjudge::gate_arity(kind));
  std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
  std::vector<double> params(qcjudge::gate_param_count(kind));
  for (double& p : params) p = angle(rng);
  return {kind, std::move(qubits), std::move(params)};
}

inline qcjudge::Circuit random_circuit(std::mt19937& rng, std::size_t n_qubits, std::size_t n_gates) {
  std::vector<qcjudge::GateInstance> gates;
  for (std::size_t i = 0; i < n_gates; ++i) gates.push_back(random_gate(rng, n_qubits));
  return qcjudge::Circuit(n_qubits, std::move(gates));
}

}  // namespace testing_support
