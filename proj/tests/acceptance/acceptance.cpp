// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

// Eigen before httplib: <resolv.h> defines a _res macro that breaks Eigen.
#include "dense_oracle.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "qcjudge/problem_bank.hpp"
#include "qcjudge/refine.hpp"
#include "qcjudge/service.hpp"
#include "qcjudge/statevector.hpp"
#include "qcjudge/transpiler.hpp"
#include "random_circuit.hpp"
#include "test_problems.hpp"

using namespace qcjudge;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int g_failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  Outcome o{false, ""};
  const auto start = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  std::printf("%s  %-44s %8.1f ms  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), ms, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string verdicts_of(const RefinementSession& s) {
  std::string out;
  for (const Attempt& a : s.attempts) out += (out.empty() ? "" : ",") + std::string(verdict_name(a.report.verdict));
  return out;
}

const BankEntry& entry(const std::string& id) {
  static const ProblemBank bank = load_bank(testing_support::bank_dir());
  const BankEntry* e = bank.find(id);
  if (!e) throw std::runtime_error("bundled problem " + id + " is missing");
  return *e;
}

}  // namespace

int main() {
  criterion("amplitude chain h, ch, cx", [] {
    const auto start = Clock::now();
    const double r = 1 / std::sqrt(2.0);
    const std::vector<std::vector<double>> expect = {{r, 0, r, 0}, {r, 0, 0.5, 0.5}, {r, 0.5, 0.5, 0}};
    const std::vector<GateInstance> gates = {{GateKind::H, {0}, {}}, {GateKind::CH, {0, 1}, {}}, {GateKind::CX, {1, 0}, {}}};
    StateVector s(2);
    double worst = 0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      s.apply(gates[i]);
      for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(s[k] - Complex(expect[i][k])));
    }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << "max error " << worst;
    return Outcome{worst < 1e-10 && t < 1.0, d.str()};
  });

  criterion("global phase counts when required", [] {
    const ProblemSpec& p = entry("SAMPLE-I1").spec;
    const auto v = [&](const std::string& body) { return evaluate(testing_support::qasm(1, body), p).verdict; };
    const Verdict xs = v("x q[0];\ns q[0];\n"), y = v("y q[0];\n"), x = v("x q[0];\n");
    const std::string d = "[x,s]=" + std::string(verdict_name(xs)) + " [y]=" + std::string(verdict_name(y)) +
                          " [x]=" + std::string(verdict_name(x));
    return Outcome{xs == Verdict::AC && y == Verdict::AC && x == Verdict::WA, d};
  });

  criterion("case-study replay UGE, WA, AC", [] {
    const auto start = Clock::now();
    const BankEntry& e = entry("QPC001-A4");
    ScriptedGenerator gen = ScriptedGenerator::from_directory(e.directory / "fixtures" / "case_study");
    const RefinementSession s = run_session(e.spec, gen, 3);
    const auto curve = success_curve({s}, 3);
    const double t = seconds_since(start);
    const bool ok = verdicts_of(s) == "UGE,WA,AC" && curve == std::vector<double>{0, 0, 100} && t < 5.0;
    return Outcome{ok, "verdicts " + verdicts_of(s) + ", curve " + format_percent(curve[0]) + "/" +
                           format_percent(curve[1]) + "/" + format_percent(curve[2])};
  });

  criterion("case-study final state", [] {
    const BankEntry& e = entry("QPC001-A4");
    ScriptedGenerator gen = ScriptedGenerator::from_directory(e.directory / "fixtures" / "case_study");
    const RefinementSession s = run_session(e.spec, gen, 3);
    const ParseResult parsed = parse(SourceProgram{s.attempts.back().source});
    const Circuit& c = std::get<ParsedProgram>(parsed).circuit;
    const StateVector out = run(c);
    const oracle::Vec ref = oracle::final_state(c);
    const double third = 1 / std::sqrt(3.0);
    bool ok = std::norm(out[3]) < 1e-12;
    double worst = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      ok = ok && std::abs(std::abs(out[i]) - third) <= 1e-9;
      worst = std::max(worst, std::abs(out[i] - ref(static_cast<Eigen::Index>(i))));
    }
    std::ostringstream d;
    d << "|00|,|01|,|10| = " << std::abs(out[0]) << ", " << std::abs(out[1]) << ", " << std::abs(out[2])
      << "; |11|^2 = " << std::norm(out[3]) << "; oracle diff " << worst;
    return Outcome{ok && worst < 1e-12, d.str()};
  });

  criterion("500 random circuits vs dense oracle", [] {
    const auto start = Clock::now();
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::size_t> width(1, 3), length(0, 12);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
      const Circuit c = testing_support::random_circuit(rng, width(rng), length(rng));
      const StateVector s = run(c);
      const oracle::Vec v = oracle::final_state(c);
      for (std::size_t k = 0; k < s.dim(); ++k) worst = std::max(worst, std::abs(s[k] - v(static_cast<Eigen::Index>(k))));
    }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << "max error " << worst << " in " << t << " s";
    return Outcome{worst < 1e-10 && t < 30.0, d.str()};
  });

  criterion("decomposition rules preserve unitaries", [] {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> angle(-7, 7);
    double worst = 0;
    std::size_t rules = 0;
    for (GateKind k : DecompositionRules::standard().kinds()) {
      ++rules;
      const std::size_t n = gate_arity(k);
      std::vector<std::size_t> q(n);
      for (std::size_t i = 0; i < n; ++i) q[i] = i;
      std::vector<double> p(gate_param_count(k));
      for (double& x : p) x = angle(rng);
      const Circuit one(n, {{k, q, p}});
      const Circuit d = decompose(one, universal_basis());
      for (const auto& g : d.gates())
        if (!universal_basis().count(g.kind)) return Outcome{false, std::string(gate_name(k)) + " left the basis"};
      const double f = oracle::phase_free_fidelity(oracle::circuit_unitary(one), oracle::circuit_unitary(d));
      worst = std::max(worst, std::abs(f - 1));
    }
    std::ostringstream d;
    d << rules << " rules, max |fidelity - 1| " << worst;
    return Outcome{rules == kGateKindCount - universal_basis().size() && worst < 1e-9, d.str()};
  });

  criterion("golden report and feedback sentences", [] {
    const EvaluationReport ac =
        evaluate(testing_support::qasm(2, "h q[0];\ncx q[0],q[1];\n"), entry("BELL-PHI-PLUS").spec);
    bool ok = report_json(ac) ==
              R"({ "runtime_error": false, "gate_violation": false, "depth_violation": false, "state_match": true })";
    EvaluationReport r;
    const std::vector<std::pair<Verdict, std::string>> sentences = {
        {Verdict::WA, "This is wrong. Try again."},
        {Verdict::DLE,
         "The circuit depth exceeded the given constraint. Please revise your implementation to improve efficiency. "
         "Try again."},
        {Verdict::UME, "Unauthorized modules has been used. Try again."},
        {Verdict::UGE, "An unauthorized quantum gate has been used. Try again."},
        {Verdict::RE, "The occurring error is: boom. Try again."}};
    r.error_text = "boom";
    for (const auto& [v, text] : sentences) {
      r.verdict = v;
      ok = ok && feedback_sentence(r) == text &&
           render_feedback(r, "src", Language::QiskitPython) == "Your answer was\n```python\nsrc\n```\n" + text;
    }
    return Outcome{ok, report_json(ac)};
  });

  criterion("gate violation outranks depth violation", [] {
    const std::string body = "x q[0];\nx q[1];\nx q[2];\ny q[3];\ny q[3];\ny q[3];\n";
    ProblemSpec p = entry("ALL-ONES-4").spec;
    const Verdict strict = evaluate(testing_support::qasm(4, body), p).verdict;
    p.gate_policy = GateSetPolicy::only({GateKind::X, GateKind::CX, GateKind::Y});
    const Verdict relaxed = evaluate(testing_support::qasm(4, body), p).verdict;
    return Outcome{strict == Verdict::UGE && relaxed == Verdict::DLE,
                   std::string(verdict_name(strict)) + " then " + std::string(verdict_name(relaxed))};
  });

  criterion("metrics over 58 sessions", [] {
    std::vector<RefinementSession> sessions(58);
    for (std::size_t i = 0; i < sessions.size(); ++i) {
      Attempt a;
      a.round = 1;
      a.report.verdict = i < 11 ? Verdict::AC : (i % 2 ? Verdict::WA : Verdict::RE);
      sessions[i].attempts.push_back(a);
    }
    const MetricsTable t = compute_metrics(sessions, 1);
    return Outcome{format_percent(t.success) == "18.97", "success " + format_percent(t.success) + "%"};
  });

  criterion("service round trip", [] {
    auto bank = std::make_shared<const ProblemBank>(load_bank(testing_support::bank_dir()));
    EvaluationService svc(bank, ServiceConfig{});
    HttpServer server(svc);
    const int port = server.bind("127.0.0.1", 0);
    if (port <= 0) return Outcome{false, "bind failed"};
    std::thread t([&] { server.listen(); });
    httplib::Client cli("127.0.0.1", port);
    const std::string src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\nch q[0],q[1];\ncx q[1],q[0];\n";
    auto ok = cli.Post("/evaluate", nlohmann::json{{"problem_id", "QPC001-A4"}, {"language", "qasm"}, {"source", src}}.dump(),
                       "application/json");
    auto missing = cli.Post("/evaluate", nlohmann::json{{"problem_id", "NOPE"}, {"language", "qasm"}, {"source", src}}.dump(),
                            "application/json");
    server.stop();
    t.join();
    if (!ok || !missing) return Outcome{false, "no response"};
    const bool golden = ok->body.find(R"("report": { "runtime_error": false, "gate_violation": false, "depth_violation": false, "state_match": true })") != std::string::npos;
    const bool pass = ok->status == 200 && golden && nlohmann::json::parse(ok->body)["verdict"] == "AC" && missing->status == 404;
    return Outcome{pass, "status " + std::to_string(ok->status) + ", unknown id " + std::to_string(missing->status)};
  });

  std::printf("%s: %d failure(s)\n", g_failures ? "FAILED" : "ALL PASSED", g_failures);
  return g_failures ? 1 : 0;
}
