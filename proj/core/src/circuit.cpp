#include "qcjudge/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qcjudge/errors.hpp"

namespace qcjudge {

namespace {

struct GateInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
  std::size_t params;
};

constexpr std::array<GateInfo, kGateKindCount> kGateTable{{
    {GateKind::H, "h", 1, 0},
    {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},
    {GateKind::Z, "z", 1, 0},
    {GateKind::S, "s", 1, 0},
    {GateKind::Sdg, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},
    {GateKind::Tdg, "tdg", 1, 0},
    {GateKind::RX, "rx", 1, 1},
    {GateKind::RY, "ry", 1, 1},
    {GateKind::RZ, "rz", 1, 1},
    {GateKind::P, "p", 1, 1},
    {GateKind::U, "u", 1, 3},
    {GateKind::CX, "cx", 2, 0},
    {GateKind::CZ, "cz", 2, 0},
    {GateKind::CH, "ch", 2, 0},
    {GateKind::CRY, "cry", 2, 1},
    {GateKind::CRZ, "crz", 2, 1},
    {GateKind::CP, "cp", 2, 1},
    {GateKind::CCX, "ccx", 3, 0},
    {GateKind::SWAP, "swap", 2, 0},
}};

constexpr std::array<GateKind, kGateKindCount> kAllKinds = [] {
  std::array<GateKind, kGateKindCount> kinds{};
  for (std::size_t i = 0; i < kGateKindCount; ++i) kinds[i] = kGateTable[i].kind;
  return kinds;
}();

const GateInfo& info(GateKind kind) { return kGateTable[static_cast<std::size_t>(kind)]; }

constexpr Complex kI{0.0, 1.0};

GateMatrix single(Complex a, Complex b, Complex c, Complex d) { return GateMatrix(2, {a, b, c, d}); }

// Embed a single-qubit unitary as the target of `controls` control qubits.
GateMatrix controlled(const GateMatrix& base, std::size_t controls) {
  const std::size_t dim = std::size_t{2} << controls;
  GateMatrix m = GateMatrix::identity(dim);
  const std::size_t off = dim - 2;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) m(off + r, off + c) = base(r, c);
  return m;
}

GateMatrix ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return single(c, -s, s, c);
}

GateMatrix rz(double theta) {
  return single(std::exp(-kI * (theta / 2)), 0.0, 0.0, std::exp(kI * (theta / 2)));
}

GateMatrix phase(double lambda) { return single(1.0, 0.0, 0.0, std::exp(kI * lambda)); }

GateMatrix hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  return single(r, r, r, -r);
}

GateMatrix pauli_x() { return single(0.0, 1.0, 1.0, 0.0); }

}  // namespace

std::span<const GateKind> all_gate_kinds() { return kAllKinds; }

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (const auto& g : kGateTable)
    if (g.name == name) return g.kind;
  return std::nullopt;
}

std::size_t gate_arity(GateKind kind) { return info(kind).arity; }
std::size_t gate_param_count(GateKind kind) { return info(kind).params; }

Circuit::Circuit(std::size_t n_qubits, std::vector<GateInstance> gates)
    : n_qubits_(n_qubits), gates_(std::move(gates)) {}

GateMatrix::GateMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) throw DefinitionError("matrix data does not match dimension");
}

GateMatrix GateMatrix::identity(std::size_t dim) {
  GateMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

GateMatrix GateMatrix::adjoint() const {
  GateMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
  const std::size_t n = a.dim();
  GateMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

GateMatrix gate_matrix(GateKind kind, std::span<const double> params) {
  if (params.size() != gate_param_count(kind)) {
    throw DefinitionError("gate '" + std::string(gate_name(kind)) + "' takes " +
                          std::to_string(gate_param_count(kind)) + " parameter(s), got " +
                          std::to_string(params.size()));
  }
  using std::numbers::pi;
  switch (kind) {
    case GateKind::H:
      return hadamard();
    case GateKind::X:
      return pauli_x();
    case GateKind::Y:
      return single(0.0, -kI, kI, 0.0);
    case GateKind::Z:
      return single(1.0, 0.0, 0.0, -1.0);
    case GateKind::S:
      return single(1.0, 0.0, 0.0, kI);
    case GateKind::Sdg:
      return single(1.0, 0.0, 0.0, -kI);
    case GateKind::T:
      return phase(pi / 4);
    case GateKind::Tdg:
      return phase(-pi / 4);
    case GateKind::RX: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return single(c, -kI * s, -kI * s, c);
    }
    case GateKind::RY:
      return ry(params[0]);
    case GateKind::RZ:
      return rz(params[0]);
    case GateKind::P:
      return phase(params[0]);
    case GateKind::U: {
      const double theta = params[0], phi = params[1], lambda = params[2];
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      return single(c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s,
                    std::exp(kI * (phi + lambda)) * c);
    }
    case GateKind::CX:
      return controlled(pauli_x(), 1);
    case GateKind::CZ:
      return controlled(single(1.0, 0.0, 0.0, -1.0), 1);
    case GateKind::CH:
      return controlled(hadamard(), 1);
    case GateKind::CRY:
      return controlled(ry(params[0]), 1);
    case GateKind::CRZ:
      return controlled(rz(params[0]), 1);
    case GateKind::CP:
      return controlled(phase(params[0]), 1);
    case GateKind::CCX:
      return controlled(pauli_x(), 2);
    case GateKind::SWAP: {
      GateMatrix m(4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
      return m;
    }
  }
  throw DefinitionError("unknown gate kind");
}

std::vector<Violation> validate(const Circuit& circuit) {
  std::vector<Violation> out;
  if (circuit.n_qubits() == 0) {
    out.push_back({std::nullopt, ViolationKind::EmptyRegister, "circuit has no qubits"});
  }
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const GateInstance& g = circuit.gates()[i];
    const std::string where = "gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind)) + ")";
    if (g.qubits.size() != gate_arity(g.kind)) {
      out.push_back({i, ViolationKind::ArityMismatch,
                     where + ": expects " + std::to_string(gate_arity(g.kind)) + " qubit(s), got " +
                         std::to_string(g.qubits.size())});
    }
    if (g.params.size() != gate_param_count(g.kind)) {
      out.push_back({i, ViolationKind::ParamCountMismatch,
                     where + ": expects " + std::to_string(gate_param_count(g.kind)) +
                         " parameter(s), got " + std::to_string(g.params.size())});
    }
    for (double p : g.params) {
      if (!std::isfinite(p)) {
        out.push_back({i, ViolationKind::NonFiniteParam, where + ": non-finite parameter"});
        break;
      }
    }
    for (std::size_t a = 0; a < g.qubits.size(); ++a) {
      if (g.qubits[a] >= circuit.n_qubits()) {
        out.push_back({i, ViolationKind::QubitOutOfRange,
                       where + ": qubit " + std::to_string(g.qubits[a]) + " out of range"});
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (g.qubits[a] == g.qubits[b]) {
          out.push_back({i, ViolationKind::DuplicateOperand,
                         where + ": duplicate operand qubit " + std::to_string(g.qubits[a])});
        }
      }
    }
  }
  return out;
}

std::optional<std::size_t> basis_index(std::string_view label, std::size_t n_qubits) {
  if (label.size() != n_qubits) return std::nullopt;
  std::size_t index = 0;
  for (char ch : label) {
    if (ch != '0' && ch != '1') return std::nullopt;
    index = (index << 1) | static_cast<std::size_t>(ch - '0');
  }
  return index;
}

std::string basis_label(std::size_t index, std::size_t n_qubits) {
  std::string label(n_qubits, '0');
  for (std::size_t k = 0; k < n_qubits; ++k)
    if ((index >> (n_qubits - 1 - k)) & 1U) label[k] = '1';
  return label;
}

}  // namespace qcjudge
