#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcjudge/circuit.hpp"

namespace qcjudge {

inline constexpr std::size_t kMaxQubits = 20;

// Dense pure state of n qubits. Amplitude i belongs to basis label
// |q0 q1 ... q_{n-1}> with i = sum_k q_k * 2^(n-1-k).
class StateVector {
 public:
  // |0...0>. Throws ResourceError when n_qubits > kMaxQubits.
  explicit StateVector(std::size_t n_qubits);
  // Takes amplitudes as given; length must be a power of two.
  StateVector(std::size_t n_qubits, std::vector<Complex> amps);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

  // In-place application of one gate.
  void apply(const GateInstance& gate);

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

StateVector apply_gate(StateVector state, const GateInstance& gate);

struct RunOptions {
  // Effective cap is min(qubit_cap, kMaxQubits).
  std::size_t qubit_cap = kMaxQubits;
  // Checked between gates; TimeoutError when passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Applies the circuit's gates in order to |0...0>.
StateVector run(const Circuit& circuit, const RunOptions& options = {});

// <a|b> = sum conj(a_i) b_i. Throws DimensionMismatch on differing widths.
Complex overlap(const StateVector& a, const StateVector& b);

}  // namespace qcjudge
