#include <gtest/gtest.h>

#include <cmath>

#include "qcjudge/errors.hpp"
#include "qcjudge/judge.hpp"

using namespace qcjudge;

namespace {

StateVector one_qubit(Complex a, Complex b) { return StateVector(1, {a, b}); }

const Complex kI(0, 1);

}  // namespace

TEST(ExactState, ReferenceIsNormalized) {
  const JudgeSpec s = JudgeSpec::exact_state(StateVector(2, {1, 0, 0, 1}), PhaseMode::Ignored);
  EXPECT_NEAR(s.reference()->norm(), 1.0, 1e-15);
  EXPECT_THROW(JudgeSpec::exact_state(StateVector(1, {0, 0}), PhaseMode::Ignored), ContractViolation);
}

TEST(ExactState, PhaseSensitiveRejectsGlobalPhase) {
  const JudgeSpec s = JudgeSpec::exact_state(one_qubit(0, kI), PhaseMode::Sensitive);
  EXPECT_TRUE(judge_state(one_qubit(0, kI), s).match);
  EXPECT_FALSE(judge_state(one_qubit(0, 1), s).match);
  EXPECT_FALSE(judge_state(one_qubit(0, -kI), s).match);
}

TEST(ExactState, PhaseIgnoredAcceptsAnyGlobalPhase) {
  const JudgeSpec s = JudgeSpec::exact_state(one_qubit(0, kI), PhaseMode::Ignored);
  for (double phi : {0.0, 0.3, 1.0, 3.0, -2.0}) EXPECT_TRUE(judge_state(one_qubit(0, std::polar(1.0, phi)), s).match);
  EXPECT_FALSE(judge_state(one_qubit(1, 0), s).match);
}

TEST(ExactState, ToleranceBoundaries) {
  const double tol = 1e-6;
  const JudgeSpec ignored = JudgeSpec::exact_state(one_qubit(1, 0), PhaseMode::Ignored, tol);
  // |<ref|out>| = cos(t): accept iff cos(t) >= 1 - tol.
  const double edge = std::acos(1 - tol);
  EXPECT_TRUE(judge_state(one_qubit(std::cos(edge * 0.9), std::sin(edge * 0.9)), ignored).match);
  EXPECT_FALSE(judge_state(one_qubit(std::cos(edge * 1.1), std::sin(edge * 1.1)), ignored).match);

  const JudgeSpec sensitive = JudgeSpec::exact_state(one_qubit(1, 0), PhaseMode::Sensitive, tol);
  // |e^{i phi} - 1| = 2 sin(phi/2): accept iff below sqrt(2 tol).
  const double phi_edge = 2 * std::asin(std::sqrt(2 * tol) / 2);
  EXPECT_TRUE(judge_state(one_qubit(std::polar(1.0, phi_edge * 0.9), 0), sensitive).match);
  EXPECT_FALSE(judge_state(one_qubit(std::polar(1.0, phi_edge * 1.1), 0), sensitive).match);
}

TEST(ExactState, WidthMismatchThrows) {
  const JudgeSpec s = JudgeSpec::exact_state(one_qubit(1, 0), PhaseMode::Ignored);
  EXPECT_THROW(judge_state(StateVector(2), s), DimensionMismatch);
}

TEST(SupportPredicate, ChecksOnlyNamedIndices) {
  const JudgeSpec s = JudgeSpec::support_predicate(2, {0, 1, 2}, {3});
  EXPECT_EQ(s.phase_mode(), PhaseMode::Ignored);
  const double r = 1 / std::sqrt(3.0);
  EXPECT_TRUE(judge_state(StateVector(2, {r, r, r, 0}), s).match);
  EXPECT_TRUE(judge_state(StateVector(2, {Complex(0, 0.8), 0.36, 0.48, 0}), s).match);
  EXPECT_FALSE(judge_state(StateVector(2, {std::sqrt(2.0 / 3), 0, r / std::sqrt(2.0), r / std::sqrt(2.0)}), s).match);
  EXPECT_FALSE(judge_state(StateVector(2, {1, 0, 0, 0}), s).match);
}

TEST(SupportPredicate, ThresholdsAtTolerance) {
  const double tol = 1e-6;
  const JudgeSpec s = JudgeSpec::support_predicate(1, {0}, {1}, tol);
  const double small = std::sqrt(tol * 0.5), big = std::sqrt(tol * 2);
  EXPECT_TRUE(judge_state(StateVector(1, {std::sqrt(1 - small * small), small}), s).match);
  EXPECT_FALSE(judge_state(StateVector(1, {std::sqrt(1 - big * big), big}), s).match);
}

TEST(SupportPredicate, RejectsInconsistentSets) {
  EXPECT_THROW(JudgeSpec::support_predicate(2, {1}, {1}), ContractViolation);
  EXPECT_THROW(JudgeSpec::support_predicate(2, {4}, {}), ContractViolation);
  EXPECT_THROW(JudgeSpec::support_predicate(2, {}, {7}), ContractViolation);
}

TEST(Judge, DiagnosticNamesViolatedIndex) {
  const JudgeSpec s = JudgeSpec::support_predicate(2, {0, 1, 2}, {3});
  const JudgeResult r = judge_state(StateVector(2, {0, 0, 0, 1}), s);
  EXPECT_FALSE(r.match);
  EXPECT_FALSE(r.diagnostic.empty());
}
