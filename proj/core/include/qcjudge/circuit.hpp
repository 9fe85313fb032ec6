#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcjudge {

using Complex = std::complex<double>;

// The engine's gate universe. A problem's allowed set is a subset of this.
enum class GateKind {
  H,
  X,
  Y,
  Z,
  S,
  Sdg,
  T,
  Tdg,
  RX,
  RY,
  RZ,
  P,
  U,
  CX,
  CZ,
  CH,
  CRY,
  CRZ,
  CP,
  CCX,
  SWAP,
};

inline constexpr std::size_t kGateKindCount = 21;

std::span<const GateKind> all_gate_kinds();

// Lower-case QASM mnemonic ("h", "cx", "sdg", ...).
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

// Number of qubit operands (1, 2 or 3).
std::size_t gate_arity(GateKind kind);
// Number of angle parameters (0, 1 or 3).
std::size_t gate_param_count(GateKind kind);

struct GateInstance {
  GateKind kind;
  // Controls first, target last.
  std::vector<std::size_t> qubits;
  // Radians.
  std::vector<double> params;

  friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits, std::vector<GateInstance> gates = {});

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<GateInstance>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t n_qubits_;
  std::vector<GateInstance> gates_;
};

// Dense row-major square complex matrix.
class GateMatrix {
 public:
  explicit GateMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  GateMatrix(std::size_t dim, std::vector<Complex> row_major);

  static GateMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }
  std::span<const Complex> data() const { return data_; }

  GateMatrix adjoint() const;
  friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b);

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

// Textbook unitary of a gate. Operand j maps to bit (k-1-j) of the matrix
// index, so the first operand is the most significant bit and controlled
// gates carry their base unitary in the bottom-right (all controls = 1) block.
// Throws DefinitionError when params.size() != gate_param_count(kind).
GateMatrix gate_matrix(GateKind kind, std::span<const double> params = {});

enum class ViolationKind {
  EmptyRegister,
  QubitOutOfRange,
  DuplicateOperand,
  ArityMismatch,
  ParamCountMismatch,
  NonFiniteParam,
};

struct Violation {
  // Index into Circuit::gates(), or nullopt for circuit-level problems.
  std::optional<std::size_t> gate_index;
  ViolationKind kind;
  std::string message;
};

// Every invariant violation in the circuit. Empty means well-formed.
std::vector<Violation> validate(const Circuit& circuit);

// Amplitude index of a basis label written q0 q1 ... q_{n-1}, e.g. "10" -> 2.
std::optional<std::size_t> basis_index(std::string_view label, std::size_t n_qubits);
std::string basis_label(std::size_t index, std::size_t n_qubits);

}  // namespace qcjudge
