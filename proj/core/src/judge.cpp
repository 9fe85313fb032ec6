#include "qcjudge/judge.hpp"

#include <cmath>
#include <cstdio>

#include "qcjudge/errors.hpp"

namespace qcjudge {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt_complex(Complex c) { return "(" + fmt_double(c.real()) + ", " + fmt_double(c.imag()) + ")"; }

}  // namespace

JudgeSpec JudgeSpec::exact_state(StateVector reference, PhaseMode mode, double tolerance) {
  const double n = reference.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ContractViolation("reference state must be a nonzero finite vector");
  // Leave already-normalized vectors untouched so serialization round-trips.
  if (std::abs(n - 1.0) > 1e-14)
    for (Complex& a : reference.amplitudes()) a /= n;
  JudgeSpec spec;
  spec.kind_ = Kind::ExactState;
  spec.n_qubits_ = reference.n_qubits();
  spec.tolerance_ = tolerance;
  spec.phase_mode_ = mode;
  spec.reference_ = std::move(reference);
  return spec;
}

JudgeSpec JudgeSpec::support_predicate(std::size_t n_qubits, std::set<std::size_t> required_nonzero,
                                       std::set<std::size_t> required_zero, double tolerance) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (std::size_t i : required_nonzero) {
    if (i >= dim) throw ContractViolation("required_nonzero index out of range");
    if (required_zero.count(i)) throw ContractViolation("index " + basis_label(i, n_qubits) + " is both required zero and nonzero");
  }
  for (std::size_t i : required_zero)
    if (i >= dim) throw ContractViolation("required_zero index out of range");
  JudgeSpec spec;
  spec.kind_ = Kind::SupportPredicate;
  spec.n_qubits_ = n_qubits;
  spec.tolerance_ = tolerance;
  spec.phase_mode_ = PhaseMode::Ignored;
  spec.required_nonzero_ = std::move(required_nonzero);
  spec.required_zero_ = std::move(required_zero);
  return spec;
}

JudgeResult judge_state(const StateVector& output, const JudgeSpec& spec) {
  if (output.n_qubits() != spec.n_qubits()) {
    throw DimensionMismatch("output has " + std::to_string(output.n_qubits()) + " qubits, problem expects " +
                            std::to_string(spec.n_qubits()));
  }
  const double tol = spec.tolerance();

  if (spec.kind() == JudgeSpec::Kind::ExactState) {
    const Complex ov = overlap(*spec.reference(), output);
    const double fidelity = std::norm(ov);
    JudgeResult r;
    if (spec.phase_mode() == PhaseMode::Ignored) {
      r.match = std::abs(ov) >= 1.0 - tol;
    } else {
      r.match = std::abs(ov - Complex{1.0, 0.0}) < std::sqrt(2.0 * tol);
    }
    r.diagnostic = "fidelity " + fmt_double(fidelity) + ", overlap " + fmt_complex(ov);
    if (!r.match && spec.phase_mode() == PhaseMode::Sensitive && std::abs(ov) >= 1.0 - tol) {
      r.diagnostic += "; state is correct up to a global phase of " + fmt_double(std::arg(ov)) + " rad";
    }
    return r;
  }

  const std::size_t n = spec.n_qubits();
  for (std::size_t i : spec.required_zero()) {
    const double p = std::norm(output[i]);
    if (p >= tol) {
      return {false, "basis state |" + basis_label(i, n) + "> must have zero amplitude, probability " + fmt_double(p)};
    }
  }
  for (std::size_t i : spec.required_nonzero()) {
    const double p = std::norm(output[i]);
    if (p < tol) {
      return {false, "basis state |" + basis_label(i, n) + "> must have nonzero amplitude, probability " + fmt_double(p)};
    }
  }
  return {true, "support predicate satisfied"};
}

}  // namespace qcjudge
