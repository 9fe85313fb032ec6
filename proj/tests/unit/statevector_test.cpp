#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "qcjudge/errors.hpp"
#include "qcjudge/statevector.hpp"
#include "random_circuit.hpp"

using namespace qcjudge;

namespace {

double max_error(const StateVector& s, const oracle::Vec& v) {
  double e = 0;
  for (std::size_t i = 0; i < s.dim(); ++i) e = std::max(e, std::abs(s[i] - v(static_cast<Eigen::Index>(i))));
  return e;
}

}  // namespace

TEST(StateVector, StartsInAllZeros) {
  StateVector s(3);
  EXPECT_EQ(s.dim(), 8u);
  EXPECT_EQ(s[0], Complex(1));
  EXPECT_DOUBLE_EQ(s.norm(), 1.0);
}

TEST(StateVector, RejectsBadConstruction) {
  EXPECT_THROW(StateVector(kMaxQubits + 1), ResourceError);
  EXPECT_THROW(StateVector(2, {1, 0, 0}), DimensionMismatch);
}

TEST(StateVector, ControlledHOnSuperposedControl) {
  const double r = 1 / std::sqrt(2.0);
  StateVector s(2);
  s.apply({GateKind::H, {0}, {}});
  s.apply({GateKind::CH, {0, 1}, {}});
  EXPECT_NEAR(s[0].real(), r, 1e-12);
  EXPECT_NEAR(s[1].real(), 0, 1e-12);
  EXPECT_NEAR(s[2].real(), 0.5, 1e-12);
  EXPECT_NEAR(s[3].real(), 0.5, 1e-12);
  s.apply({GateKind::CX, {1, 0}, {}});
  EXPECT_NEAR(s[0].real(), r, 1e-12);
  EXPECT_NEAR(s[1].real(), 0.5, 1e-12);
  EXPECT_NEAR(s[2].real(), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(s[3]), 0, 1e-12);
}

TEST(StateVector, ApplyRejectsOutOfRangeOperands) {
  StateVector s(2);
  EXPECT_THROW(s.apply({GateKind::H, {2}, {}}), ContractViolation);
  EXPECT_THROW(s.apply({GateKind::CX, {0}, {}}), ContractViolation);
}

TEST(StateVector, RandomCircuitsMatchDenseOracle) {
  std::mt19937 rng(20240521);
  std::uniform_int_distribution<std::size_t> width(1, 5), length(0, 30);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Circuit c = testing_support::random_circuit(rng, width(rng), length(rng));
    const StateVector s = run(c);
    worst = std::max(worst, max_error(s, oracle::final_state(c)));
    EXPECT_NEAR(s.norm(), 1.0, 1e-10);
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(StateVector, SingleGatesOnEveryOperandOrderMatchOracle) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3;
    // Random start state so every matrix entry matters.
    std::vector<Complex> amps(8);
    std::normal_distribution<double> nd;
    for (auto& a : amps) a = {nd(rng), nd(rng)};
    StateVector s(n, amps);
    oracle::Vec v(8);
    for (int i = 0; i < 8; ++i) v(i) = amps[static_cast<std::size_t>(i)];
    const GateInstance g = testing_support::random_gate(rng, n);
    s.apply(g);
    EXPECT_LT(max_error(s, oracle::gate_unitary(g, n) * v), 1e-10) << gate_name(g.kind);
  }
}

TEST(Run, EnforcesQubitCap) {
  Circuit c(4, {{GateKind::H, {0}, {}}});
  RunOptions opts;
  opts.qubit_cap = 3;
  EXPECT_THROW(run(c, opts), ResourceError);
  opts.qubit_cap = 4;
  EXPECT_NO_THROW(run(c, opts));
}

TEST(Run, StopsAtDeadline) {
  Circuit c(2, std::vector<GateInstance>(100, GateInstance{GateKind::H, {0}, {}}));
  RunOptions opts;
  opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  EXPECT_THROW(run(c, opts), TimeoutError);
}

TEST(Overlap, ConjugatesLeftArgumentAndChecksWidth) {
  StateVector a(1, {0, Complex(0, 1)});
  StateVector b(1, {0, 1});
  EXPECT_LT(std::abs(overlap(a, b) - Complex(0, -1)), 1e-15);
  EXPECT_THROW(overlap(a, StateVector(2)), DimensionMismatch);
}
