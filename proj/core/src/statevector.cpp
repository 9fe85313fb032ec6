#include "qcjudge/statevector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qcjudge/errors.hpp"

namespace qcjudge {

namespace {

void check_width(std::size_t n_qubits) {
  if (n_qubits > kMaxQubits) {
    throw ResourceError("state of " + std::to_string(n_qubits) + " qubits exceeds the " +
                        std::to_string(kMaxQubits) + "-qubit simulator cap");
  }
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  check_width(n_qubits);
  amps_.assign(std::size_t{1} << n_qubits, Complex{});
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
  check_width(n_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw DimensionMismatch("expected " + std::to_string(std::size_t{1} << n_qubits) +
                            " amplitudes, got " + std::to_string(amps_.size()));
  }
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::apply(const GateInstance& gate) {
  const std::size_t k = gate.qubits.size();
  if (k != gate_arity(gate.kind)) throw ContractViolation("gate operand count does not match its arity");
  for (std::size_t q : gate.qubits) {
    if (q >= n_qubits_) {
      throw ContractViolation("qubit " + std::to_string(q) + " out of range for a " +
                              std::to_string(n_qubits_) + "-qubit state");
    }
  }
  const GateMatrix u = gate_matrix(gate.kind, gate.params);
  const std::size_t local_dim = std::size_t{1} << k;

  // offsets[m] is the amplitude stride of local basis state m; operand 0 is
  // the most significant local bit.
  std::array<std::size_t, 8> offsets{};
  for (std::size_t m = 0; m < local_dim; ++m) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j)
      if ((m >> (k - 1 - j)) & 1U) off |= std::size_t{1} << (n_qubits_ - 1 - gate.qubits[j]);
    offsets[m] = off;
  }
  // Bit positions of the operands, ascending, for enumerating the bases whose
  // operand bits are all zero.
  std::array<std::size_t, 3> bits{};
  for (std::size_t j = 0; j < k; ++j) bits[j] = n_qubits_ - 1 - gate.qubits[j];
  std::sort(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(k));

  // std::complex multiplication guards against NaN/inf on every product;
  // the matrix entries are finite so plain arithmetic is used instead.
  std::array<double, 64> ur{}, ui{};
  for (std::size_t r = 0; r < local_dim; ++r)
    for (std::size_t c = 0; c < local_dim; ++c) {
      ur[r * local_dim + c] = u(r, c).real();
      ui[r * local_dim + c] = u(r, c).imag();
    }

  std::array<double, 8> in_re{}, in_im{};
  const std::size_t groups = amps_.size() >> k;
  for (std::size_t g = 0; g < groups; ++g) {
    std::size_t base = g;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t low = base & ((std::size_t{1} << bits[j]) - 1);
      base = ((base >> bits[j]) << (bits[j] + 1)) | low;
    }
    for (std::size_t m = 0; m < local_dim; ++m) {
      in_re[m] = amps_[base + offsets[m]].real();
      in_im[m] = amps_[base + offsets[m]].imag();
    }
    for (std::size_t r = 0; r < local_dim; ++r) {
      double re = 0, im = 0;
      for (std::size_t c = 0; c < local_dim; ++c) {
        const double a = ur[r * local_dim + c], b = ui[r * local_dim + c];
        re += a * in_re[c] - b * in_im[c];
        im += a * in_im[c] + b * in_re[c];
      }
      amps_[base + offsets[r]] = Complex(re, im);
    }
  }
}

StateVector apply_gate(StateVector state, const GateInstance& gate) {
  state.apply(gate);
  return state;
}

StateVector run(const Circuit& circuit, const RunOptions& options) {
  const std::size_t cap = std::min(options.qubit_cap, kMaxQubits);
  if (circuit.n_qubits() > cap) {
    throw ResourceError("circuit uses " + std::to_string(circuit.n_qubits()) +
                        " qubits, above the configured cap of " + std::to_string(cap));
  }
  StateVector state(circuit.n_qubits());
  for (const GateInstance& g : circuit.gates()) {
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
      throw TimeoutError("simulation exceeded its time budget");
    }
    state.apply(g);
  }
  return state;
}

Complex overlap(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionMismatch("overlap of " + std::to_string(a.n_qubits()) + "-qubit and " +
                            std::to_string(b.n_qubits()) + "-qubit states");
  }
  Complex sum{};
  for (std::size_t i = 0; i < a.dim(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

}  // namespace qcjudge
