#include "qcjudge/problem_bank.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcjudge/errors.hpp"

namespace qcjudge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class SchemaReader {
 public:
  explicit SchemaReader(std::string_view origin) : origin_(origin) {}

  [[noreturn]] void error(std::string_view field, std::string_view what) const {
    throw LoadError(origin_ + ": field '" + std::string(field) + "': " + std::string(what));
  }

  void only_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, _] : obj.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        error(std::string(where) + key, "unknown field");
      }
    }
  }

  const json& require(const json& obj, std::string_view key, std::string_view path) const {
    auto it = obj.find(key);
    if (it == obj.end()) error(path, "missing");
    return *it;
  }

  std::string string(const json& obj, std::string_view key, std::string_view path) const {
    const json& v = require(obj, key, path);
    if (!v.is_string()) error(path, "must be a string");
    return v.get<std::string>();
  }

  std::size_t positive(const json& v, std::string_view path) const {
    if (!v.is_number_integer() || v.get<long long>() <= 0) error(path, "must be a positive integer");
    return v.get<std::size_t>();
  }

  double number(const json& v, std::string_view path) const {
    if (!v.is_number()) error(path, "must be a number");
    return v.get<double>();
  }

  std::size_t basis(const json& v, std::size_t n_qubits, std::string_view path) const {
    if (!v.is_string()) error(path, "basis label must be a string");
    const auto idx = basis_index(v.get<std::string>(), n_qubits);
    if (!idx) error(path, "'" + v.get<std::string>() + "' is not a " + std::to_string(n_qubits) + "-qubit basis label");
    return *idx;
  }

 private:
  std::string origin_;
};

GateSetPolicy read_policy(const SchemaReader& rd, const json& j) {
  if (!j.is_object()) rd.error("gate_policy", "must be an object");
  rd.only_keys(j, "gate_policy.", {"allowed", "mode"});
  GateCheckMode mode = GateCheckMode::Strict;
  if (auto it = j.find("mode"); it != j.end()) {
    if (*it == "strict") {
      mode = GateCheckMode::Strict;
    } else if (*it == "lenient") {
      mode = GateCheckMode::Lenient;
    } else {
      rd.error("gate_policy.mode", "must be \"strict\" or \"lenient\"");
    }
  }
  const json& allowed = rd.require(j, "allowed", "gate_policy.allowed");
  if (allowed.is_string() && allowed == "ALL") return GateSetPolicy::all(mode);
  if (!allowed.is_array() || allowed.empty()) rd.error("gate_policy.allowed", "must be \"ALL\" or a non-empty list of gate names");
  std::set<GateKind> kinds;
  for (const json& name : allowed) {
    if (!name.is_string()) rd.error("gate_policy.allowed", "gate names must be strings");
    const auto kind = gate_from_name(name.get<std::string>());
    if (!kind) rd.error("gate_policy.allowed", "unknown gate '" + name.get<std::string>() + "'");
    kinds.insert(*kind);
  }
  return GateSetPolicy::only(std::move(kinds), mode);
}

JudgeSpec read_judge(const SchemaReader& rd, const json& j, std::size_t n_qubits) {
  if (!j.is_object()) rd.error("judge", "must be an object");
  const std::string kind = rd.string(j, "kind", "judge.kind");
  double tolerance = kDefaultJudgeTolerance;
  if (auto it = j.find("tolerance"); it != j.end()) {
    tolerance = rd.number(*it, "judge.tolerance");
    if (!(tolerance > 0.0 && tolerance < 1.0)) rd.error("judge.tolerance", "must lie in (0, 1)");
  }

  if (kind == "exact_state") {
    rd.only_keys(j, "judge.", {"kind", "tolerance", "phase_mode", "reference"});
    const std::string phase = rd.string(j, "phase_mode", "judge.phase_mode");
    if (phase != "sensitive" && phase != "ignored") rd.error("judge.phase_mode", "must be \"sensitive\" or \"ignored\"");
    const json& ref = rd.require(j, "reference", "judge.reference");
    if (!ref.is_array() || ref.empty()) rd.error("judge.reference", "must be a non-empty list of [label, re, im]");
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    std::set<std::size_t> seen;
    for (const json& entry : ref) {
      if (!entry.is_array() || entry.size() != 3) rd.error("judge.reference", "entries must be [label, re, im]");
      const std::size_t idx = rd.basis(entry[0], n_qubits, "judge.reference");
      if (!seen.insert(idx).second) rd.error("judge.reference", "basis label '" + entry[0].get<std::string>() + "' listed twice");
      amps[idx] = Complex{rd.number(entry[1], "judge.reference"), rd.number(entry[2], "judge.reference")};
    }
    StateVector reference(n_qubits, std::move(amps));
    if (!(reference.norm() > 0.0)) rd.error("judge.reference", "must not be the zero vector");
    return JudgeSpec::exact_state(std::move(reference), phase == "sensitive" ? PhaseMode::Sensitive : PhaseMode::Ignored,
                                  tolerance);
  }
  if (kind == "support_predicate") {
    rd.only_keys(j, "judge.", {"kind", "tolerance", "required_nonzero", "required_zero"});
    const auto read_set = [&](std::string_view key) {
      const std::string path = "judge." + std::string(key);
      std::set<std::size_t> out;
      auto it = j.find(key);
      if (it == j.end()) return out;
      if (!it->is_array()) rd.error(path, "must be a list of basis labels");
      for (const json& label : *it) out.insert(rd.basis(label, n_qubits, path));
      return out;
    };
    std::set<std::size_t> nonzero = read_set("required_nonzero");
    std::set<std::size_t> zero = read_set("required_zero");
    if (nonzero.empty() && zero.empty()) rd.error("judge", "support predicate constrains no basis state");
    for (std::size_t i : nonzero)
      if (zero.count(i)) rd.error("judge.required_zero", "'" + basis_label(i, n_qubits) + "' is also required nonzero");
    return JudgeSpec::support_predicate(n_qubits, std::move(nonzero), std::move(zero), tolerance);
  }
  rd.error("judge.kind", "must be \"exact_state\" or \"support_predicate\"");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string() + ": cannot be read");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string default_python_template(std::size_t n_qubits) {
  return "from qiskit import QuantumCircuit\n\ndef solve() -> QuantumCircuit:\n    qc = QuantumCircuit(" +
         std::to_string(n_qubits) + ")\n    # Write your code here:\n\n    return qc\n";
}

}  // namespace

std::string_view language_name(Language language) {
  return language == Language::Qasm ? "qasm" : "qiskit_python";
}

std::optional<Language> language_from_name(std::string_view name) {
  if (name == "qasm") return Language::Qasm;
  if (name == "qiskit_python") return Language::QiskitPython;
  return std::nullopt;
}

ProblemBank::ProblemBank(std::vector<BankEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const BankEntry& a, const BankEntry& b) { return a.spec.id < b.spec.id; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].spec.id == entries_[i - 1].spec.id) throw LoadError("duplicate problem id '" + entries_[i].spec.id + "'");
  }
}

const BankEntry* ProblemBank::find(std::string_view id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const BankEntry& e, std::string_view key) { return e.spec.id < key; });
  return it != entries_.end() && it->spec.id == id ? &*it : nullptr;
}

std::vector<ProblemSpec> ProblemBank::specs() const {
  std::vector<ProblemSpec> out;
  out.reserve(entries_.size());
  for (const BankEntry& e : entries_) out.push_back(e.spec);
  return out;
}

ProblemSpec parse_problem(std::string_view json_text, std::string_view origin) {
  SchemaReader rd(origin);
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw LoadError(std::string(origin) + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) rd.error("(root)", "must be an object");
  rd.only_keys(j, "", {"id", "statement", "n_qubits", "gate_policy", "depth_limit", "judge", "code_template"});

  const std::string id = rd.string(j, "id", "id");
  if (id.empty()) rd.error("id", "must not be empty");
  const std::size_t n_qubits = rd.positive(rd.require(j, "n_qubits", "n_qubits"), "n_qubits");
  if (n_qubits > kMaxQubits) rd.error("n_qubits", "exceeds the " + std::to_string(kMaxQubits) + "-qubit cap");

  std::optional<std::size_t> depth_limit;
  if (auto it = j.find("depth_limit"); it != j.end() && !it->is_null()) depth_limit = rd.positive(*it, "depth_limit");

  GateSetPolicy policy = GateSetPolicy::all();
  if (auto it = j.find("gate_policy"); it != j.end()) policy = read_policy(rd, *it);

  std::string tmpl = default_python_template(n_qubits);
  if (auto it = j.find("code_template"); it != j.end()) {
    if (!it->is_string()) rd.error("code_template", "must be a string");
    tmpl = it->get<std::string>();
  }

  return ProblemSpec{
      .id = id,
      .statement = rd.string(j, "statement", "statement"),
      .n_qubits = n_qubits,
      .gate_policy = std::move(policy),
      .depth_limit = depth_limit,
      .judge = read_judge(rd, rd.require(j, "judge", "judge"), n_qubits),
      .code_template = std::move(tmpl),
  };
}

std::string serialize_problem(const ProblemSpec& spec) {
  json j;
  j["id"] = spec.id;
  j["statement"] = spec.statement;
  j["n_qubits"] = spec.n_qubits;
  json policy;
  if (spec.gate_policy.allows_all()) {
    policy["allowed"] = "ALL";
  } else {
    policy["allowed"] = json::array();
    for (GateKind k : spec.gate_policy.allowed()) policy["allowed"].push_back(std::string(gate_name(k)));
  }
  policy["mode"] = spec.gate_policy.mode() == GateCheckMode::Strict ? "strict" : "lenient";
  j["gate_policy"] = policy;
  j["depth_limit"] = spec.depth_limit ? json(*spec.depth_limit) : json(nullptr);

  const JudgeSpec& judge = spec.judge;
  json jj;
  jj["tolerance"] = judge.tolerance();
  if (judge.kind() == JudgeSpec::Kind::ExactState) {
    jj["kind"] = "exact_state";
    jj["phase_mode"] = judge.phase_mode() == PhaseMode::Sensitive ? "sensitive" : "ignored";
    jj["reference"] = json::array();
    const StateVector& ref = *judge.reference();
    for (std::size_t i = 0; i < ref.dim(); ++i) {
      if (ref[i] == Complex{}) continue;
      jj["reference"].push_back(json::array({basis_label(i, spec.n_qubits), ref[i].real(), ref[i].imag()}));
    }
  } else {
    jj["kind"] = "support_predicate";
    jj["required_nonzero"] = json::array();
    jj["required_zero"] = json::array();
    for (std::size_t i : judge.required_nonzero()) jj["required_nonzero"].push_back(basis_label(i, spec.n_qubits));
    for (std::size_t i : judge.required_zero()) jj["required_zero"].push_back(basis_label(i, spec.n_qubits));
  }
  j["judge"] = jj;
  j["code_template"] = spec.code_template;
  return j.dump(2) + "\n";
}

std::optional<Verdict> fixture_verdict(std::string_view file_name) {
  std::string stem = fs::path(std::string(file_name)).stem().string();
  std::size_t start = 0;
  while (start <= stem.size()) {
    const std::size_t end = std::min(stem.find('_', start), stem.size());
    std::string token = stem.substr(start, end - start);
    for (char& c : token) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (auto v = verdict_from_name(token)) return v;
    start = end + 1;
  }
  return std::nullopt;
}

ProblemBank load_bank(const fs::path& directory) {
  if (!fs::is_directory(directory)) throw LoadError(directory.string() + ": not a directory");
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(directory))
    if (e.is_directory()) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());

  std::vector<BankEntry> entries;
  std::set<std::string> ids;
  for (const fs::path& dir : dirs) {
    const fs::path spec_path = dir / "spec.json";
    if (!fs::exists(spec_path)) continue;
    BankEntry entry{parse_problem(read_file(spec_path), spec_path.string()), dir, std::nullopt, {}};
    if (entry.spec.id != dir.filename().string()) {
      throw LoadError(spec_path.string() + ": field 'id': '" + entry.spec.id + "' does not match directory name '" +
                      dir.filename().string() + "'");
    }
    if (!ids.insert(entry.spec.id).second) throw LoadError(spec_path.string() + ": field 'id': duplicate id");
    if (fs::exists(dir / "reference.qasm")) entry.reference_source = read_file(dir / "reference.qasm");

    const fs::path fixtures = dir / "fixtures";
    if (fs::is_directory(fixtures)) {
      for (const auto& f : fs::recursive_directory_iterator(fixtures)) {
        if (!f.is_regular_file() || lower(f.path().extension().string()) != ".qasm") continue;
        const std::string rel = fs::relative(f.path(), fixtures).generic_string();
        entry.fixtures.push_back({rel, fixture_verdict(f.path().filename().string()), read_file(f.path())});
      }
      std::sort(entry.fixtures.begin(), entry.fixtures.end(),
                [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
    }
    entries.push_back(std::move(entry));
  }
  return ProblemBank(std::move(entries));
}

std::vector<std::string> constraint_lines(const ProblemSpec& problem) {
  std::vector<std::string> lines;
  if (!problem.gate_policy.allows_all()) {
    std::string line = "Only the following quantum gates may be used: ";
    bool first = true;
    for (GateKind k : problem.gate_policy.allowed()) {
      if (!first) line += ", ";
      line += gate_name(k);
      first = false;
    }
    line += ".";
    if (problem.gate_policy.mode() == GateCheckMode::Lenient) {
      line += " Other gates are accepted if they decompose into this set.";
    }
    lines.push_back(std::move(line));
  }
  if (problem.depth_limit) {
    lines.push_back("The circuit depth must be at most " + std::to_string(*problem.depth_limit) + ".");
  }
  if (problem.judge.kind() == JudgeSpec::Kind::ExactState && problem.judge.phase_mode() == PhaseMode::Sensitive) {
    lines.push_back("States with different global phases will be considered incorrect.");
  } else {
    lines.push_back("Global phase is ignored in judge.");
  }
  return lines;
}

std::string constraints_summary(const ProblemSpec& problem) {
  std::string out;
  for (const std::string& line : constraint_lines(problem)) {
    if (!out.empty()) out += ' ';
    out += line;
  }
  return out;
}

std::string code_template_for(const ProblemSpec& problem, Language language) {
  if (language == Language::QiskitPython) return problem.code_template;
  return "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(problem.n_qubits) +
         "];\n// Write your gates here\n";
}

std::string render_prompt(const ProblemSpec& problem, Language language) {
  std::string out = "Problem:\n" + problem.statement + "\n\nConstraints:\n";
  for (const std::string& line : constraint_lines(problem)) out += line + "\n";
  out += "Use the following code format:\n```";
  out += fence_tag(language);
  out += "\n" + code_template_for(problem, language);
  if (out.back() != '\n') out += '\n';
  out += "```\n\n";
  if (language == Language::QiskitPython) {
    out += "Generate only the body of the solve() function, with no additional imports or code outside the template.";
  } else {
    out += "Generate the complete program based on the template, with no additional includes or registers.";
  }
  return out;
}

}  // namespace qcjudge
