#include <benchmark/benchmark.h>

#include "qcjudge/evaluator.hpp"

using namespace qcjudge;

namespace {

void BM_EvaluateBell(benchmark::State& state) {
  const ProblemSpec p{.id = "BELL",
                      .statement = "",
                      .n_qubits = 2,
                      .gate_policy = GateSetPolicy::only({GateKind::H, GateKind::CX}),
                      .depth_limit = 2,
                      .judge = JudgeSpec::exact_state(StateVector(2, {1, 0, 0, 1}), PhaseMode::Ignored),
                      .code_template = ""};
  const SourceProgram src{"OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n"};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(src, p));
}
BENCHMARK(BM_EvaluateBell);

void BM_EvaluateWide(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::string text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(n) + "];\nh q[0];\n";
  for (std::size_t q = 1; q < n; ++q) text += "cx q[" + std::to_string(q - 1) + "],q[" + std::to_string(q) + "];\n";
  const ProblemSpec p{.id = "GHZ",
                      .statement = "",
                      .n_qubits = n,
                      .gate_policy = GateSetPolicy::all(),
                      .depth_limit = std::nullopt,
                      .judge = JudgeSpec::support_predicate(n, {0, (std::size_t{1} << n) - 1}, {1}),
                      .code_template = ""};
  const SourceProgram src{text};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(src, p));
}
BENCHMARK(BM_EvaluateWide)->DenseRange(8, 20, 4);

}  // namespace
