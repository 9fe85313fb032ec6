#pragma once

// Dense reference model used only by tests. Gate matrices are written out
// here from their textbook definitions and embedded into the full register by
// Kronecker products and a qubit permutation, so nothing is shared with the
// strided simulator under test.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qcjudge/circuit.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat m2(cd a, cd b, cd c, cd d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Base unitary in the bottom-right block of an identity.
inline Mat controlled(const Mat& base, int controls) {
  const Eigen::Index dim = base.rows() << controls;
  Mat out = Mat::Identity(dim, dim);
  out.bottomRightCorner(base.rows(), base.cols()) = base;
  return out;
}

inline Mat local_matrix(qcjudge::GateKind kind, const std::vector<double>& p) {
  using qcjudge::GateKind;
  const cd i(0, 1);
  const double r = 1 / std::sqrt(2.0);
  auto rx = [&](double t) { return m2(std::cos(t / 2), -i * std::sin(t / 2), -i * std::sin(t / 2), std::cos(t / 2)); };
  auto ry = [&](double t) { return m2(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2)); };
  auto rz = [&](double t) { return m2(std::exp(-i * (t / 2)), 0, 0, std::exp(i * (t / 2))); };
  auto ph = [&](double l) { return m2(1, 0, 0, std::exp(i * l)); };
  const Mat h = m2(r, r, r, -r);
  const Mat x = m2(0, 1, 1, 0);
  switch (kind) {
    case GateKind::H: return h;
    case GateKind::X: return x;
    case GateKind::Y: return m2(0, -i, i, 0);
    case GateKind::Z: return m2(1, 0, 0, -1);
    case GateKind::S: return ph(std::numbers::pi / 2);
    case GateKind::Sdg: return ph(-std::numbers::pi / 2);
    case GateKind::T: return ph(std::numbers::pi / 4);
    case GateKind::Tdg: return ph(-std::numbers::pi / 4);
    case GateKind::RX: return rx(p.at(0));
    case GateKind::RY: return ry(p.at(0));
    case GateKind::RZ: return rz(p.at(0));
    case GateKind::P: return ph(p.at(0));
    case GateKind::U: {
      const double t = p.at(0), f = p.at(1), l = p.at(2);
      return m2(std::cos(t / 2), -std::exp(i * l) * std::sin(t / 2), std::exp(i * f) * std::sin(t / 2),
                std::exp(i * (f + l)) * std::cos(t / 2));
    }
    case GateKind::CX: return controlled(x, 1);
    case GateKind::CZ: return controlled(m2(1, 0, 0, -1), 1);
    case GateKind::CH: return controlled(h, 1);
    case GateKind::CRY: return controlled(ry(p.at(0)), 1);
    case GateKind::CRZ: return controlled(rz(p.at(0)), 1);
    case GateKind::CP: return controlled(ph(p.at(0)), 1);
    case GateKind::CCX: return controlled(x, 2);
    case GateKind::SWAP: {
      Mat m = Mat::Zero(4, 4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
      return m;
    }
  }
  throw std::logic_error("unhandled gate kind");
}

// Full 2^n unitary of a gate on `operands` (first operand most significant
// within the local matrix; qubit 0 most significant in the register).
inline Mat embed(const Mat& local, const std::vector<std::size_t>& operands, std::size_t n) {
  std::vector<std::size_t> order(operands);
  for (std::size_t q = 0; q < n; ++q) {
    bool used = false;
    for (std::size_t o : operands) used = used || o == q;
    if (!used) order.push_back(q);
  }
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t rest = n - operands.size();
  const Mat in_order = kron(local, Mat::Identity(Eigen::Index(1) << rest, Eigen::Index(1) << rest));
  // perm(x, y) = 1 when permuted index y names register index x.
  Mat perm = Mat::Zero(dim, dim);
  for (std::size_t y = 0; y < dim; ++y) {
    std::size_t x = 0;
    for (std::size_t j = 0; j < n; ++j)
      if ((y >> (n - 1 - j)) & 1) x |= std::size_t{1} << (n - 1 - order[j]);
    perm(x, y) = 1;
  }
  return perm * in_order * perm.transpose();
}

inline Mat gate_unitary(const qcjudge::GateInstance& g, std::size_t n) {
  return embed(local_matrix(g.kind, g.params), g.qubits, n);
}

inline Mat circuit_unitary(const qcjudge::Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.n_qubits();
  Mat u = Mat::Identity(dim, dim);
  for (const auto& g : c.gates()) u = gate_unitary(g, c.n_qubits()) * u;
  return u;
}

inline Vec final_state(const qcjudge::Circuit& c) {
  return circuit_unitary(c).col(0);
}

// |tr(U^dagger V)| / dim; 1 iff equal up to global phase.
inline double phase_free_fidelity(const Mat& u, const Mat& v) {
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

// Longest path (in gates) through the explicit dependency DAG: an edge i -> j
// for every earlier gate i that shares a qubit with gate j.
inline std::size_t dag_depth(const qcjudge::Circuit& c) {
  const auto& g = c.gates();
  std::vector<std::size_t> longest(g.size(), 1);
  std::size_t best = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      bool shares = false;
      for (std::size_t a : g[i].qubits)
        for (std::size_t b : g[j].qubits) shares = shares || a == b;
      if (shares) longest[j] = std::max(longest[j], longest[i] + 1);
    }
    best = std::max(best, longest[j]);
  }
  return best;
}

}  // namespace oracle
