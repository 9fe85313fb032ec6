#include "qcjudge/qasm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

namespace qcjudge {

namespace {

enum class Tok { Ident, Real, Int, String, Symbol, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
};

struct Failure {
  FrontendError error;
};

[[noreturn]] void fail(FrontendErrorCategory cat, std::size_t line, std::string msg,
                       std::string construct = {}) {
  throw Failure{FrontendError{cat, line, std::move(msg), std::move(construct)}};
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  const auto peek = [&](std::size_t off) { return i + off < src.size() ? src[i + off] : '\0'; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && peek(1) == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (c == '/' && peek(1) == '*') {
      const std::size_t start = line;
      i += 2;
      while (i < src.size() && !(src[i] == '*' && peek(1) == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i >= src.size()) fail(FrontendErrorCategory::Lex, start, "unterminated block comment");
      i += 2;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t s = i;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(src.substr(s, i - s)), line});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      const std::size_t s = i;
      bool real = false;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      if (i < src.size() && src[i] == '.') {
        real = true;
        ++i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
          real = true;
          i = j;
          while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      out.push_back({real ? Tok::Real : Tok::Int, std::string(src.substr(s, i - s)), line});
    } else if (c == '"') {
      const std::size_t s = ++i;
      while (i < src.size() && src[i] != '"' && src[i] != '\n') ++i;
      if (i >= src.size() || src[i] != '"') fail(FrontendErrorCategory::Lex, line, "unterminated string literal");
      out.push_back({Tok::String, std::string(src.substr(s, i - s)), line});
      ++i;
    } else if (c == '-' && peek(1) == '>') {
      out.push_back({Tok::Arrow, "->", line});
      i += 2;
    } else if (std::string_view(";,()[]{}+-*/^=<>").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), line});
      ++i;
    } else {
      std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + std::to_string(static_cast<unsigned char>(c));
      fail(FrontendErrorCategory::Lex, line, "unexpected character '" + shown + "'");
    }
  }
  out.push_back({Tok::End, "", line});
  return out;
}

constexpr std::array<std::string_view, 5> kForeignNames{"initialize", "prepare_state", "state_preparation",
                                                        "isometry", "unitary"};

constexpr std::array<std::string_view, 8> kUnsupportedKeywords{"creg",   "measure", "reset", "if",
                                                               "opaque", "gate",    "barrier", "U"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParsedProgram program() {
    header();
    while (peek().kind != Tok::End) statement();
    if (registers_.empty()) fail(FrontendErrorCategory::Semantic, peek().line, "no qreg declared");
    return ParsedProgram{Circuit(n_qubits_, std::move(gates_)), std::move(foreign_)};
  }

 private:
  const Token& peek(std::size_t off = 0) const { return toks_[std::min(pos_ + off, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_symbol(const Token& t, char c) const { return t.kind == Tok::Symbol && t.text[0] == c; }

  static std::size_t to_size(const Token& t) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      fail(FrontendErrorCategory::Semantic, t.line, "integer '" + t.text + "' out of range");
    }
    return v;
  }

  const Token& expect_symbol(char c, std::string_view what) {
    const Token& t = peek();
    if (!is_symbol(t, c)) fail(FrontendErrorCategory::Parse, t.line, "expected '" + std::string(1, c) + "' " + std::string(what) + ", found " + describe(t));
    return next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  void header() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text != "OPENQASM") {
      fail(FrontendErrorCategory::Parse, t.line, "missing 'OPENQASM 2.0;' header");
    }
    next();
    const Token& v = next();
    if ((v.kind != Tok::Real && v.kind != Tok::Int) || std::stod(v.text) != 2.0) {
      fail(FrontendErrorCategory::UnsupportedConstruct, v.line,
           "only OpenQASM 2.0 is supported, found version " + describe(v), "OPENQASM");
    }
    expect_symbol(';', "after header");
  }

  void statement() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(FrontendErrorCategory::Parse, t.line, "expected a statement, found " + describe(t));
    if (t.text == "include") return include();
    if (t.text == "qreg") return qreg();
    for (std::string_view kw : kUnsupportedKeywords) {
      if (t.text == kw) {
        fail(FrontendErrorCategory::UnsupportedConstruct, t.line, "'" + t.text + "' is not supported", t.text);
      }
    }
    return gate_call();
  }

  void include() {
    const std::size_t line = next().line;
    const Token& file = next();
    if (file.kind != Tok::String) fail(FrontendErrorCategory::Parse, file.line, "expected a file name string after 'include'");
    if (file.text != "qelib1.inc") {
      fail(FrontendErrorCategory::UnsupportedConstruct, file.line,
           "include of \"" + file.text + "\" is not allowed", "include");
    }
    if (seen_include_) fail(FrontendErrorCategory::Semantic, line, "qelib1.inc included more than once");
    seen_include_ = true;
    expect_symbol(';', "after include");
  }

  void qreg() {
    next();
    const Token& name = next();
    if (name.kind != Tok::Ident) fail(FrontendErrorCategory::Parse, name.line, "expected register name, found " + describe(name));
    expect_symbol('[', "after register name");
    const Token& size = next();
    if (size.kind != Tok::Int) fail(FrontendErrorCategory::Parse, size.line, "expected register size, found " + describe(size));
    const std::size_t n = to_size(size);
    if (n == 0) fail(FrontendErrorCategory::Semantic, size.line, "register '" + name.text + "' has size 0");
    expect_symbol(']', "after register size");
    expect_symbol(';', "after qreg declaration");
    if (registers_.count(name.text)) fail(FrontendErrorCategory::Semantic, name.line, "register '" + name.text + "' declared twice");
    registers_[name.text] = {n_qubits_, n};
    n_qubits_ += n;
  }

  void gate_call() {
    const Token& name = next();
    const bool foreign = std::find(kForeignNames.begin(), kForeignNames.end(), name.text) != kForeignNames.end();
    const std::optional<GateKind> kind = gate_from_name(name.text);
    if (!foreign && !kind) fail(FrontendErrorCategory::Semantic, name.line, "unknown gate '" + name.text + "'");

    std::vector<double> params;
    if (is_symbol(peek(), '(')) {
      next();
      if (foreign) {
        skip_balanced();
      } else if (!is_symbol(peek(), ')')) {
        params.push_back(expr());
        while (is_symbol(peek(), ',')) {
          next();
          params.push_back(expr());
        }
        expect_symbol(')', "to close parameter list");
      } else {
        next();
      }
    }

    std::vector<std::size_t> qubits{operand()};
    while (is_symbol(peek(), ',')) {
      next();
      qubits.push_back(operand());
    }
    expect_symbol(';', "after gate operands");

    if (foreign) {
      foreign_.push_back({name.text, name.line, gates_.size(), std::move(qubits)});
      return;
    }
    if (params.size() != gate_param_count(*kind)) {
      fail(FrontendErrorCategory::Semantic, name.line,
           "gate '" + name.text + "' takes " + std::to_string(gate_param_count(*kind)) + " parameter(s), got " +
               std::to_string(params.size()));
    }
    if (qubits.size() != gate_arity(*kind)) {
      fail(FrontendErrorCategory::Semantic, name.line,
           "gate '" + name.text + "' takes " + std::to_string(gate_arity(*kind)) + " qubit(s), got " +
               std::to_string(qubits.size()));
    }
    for (std::size_t a = 0; a < qubits.size(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (qubits[a] == qubits[b]) fail(FrontendErrorCategory::Semantic, name.line, "gate '" + name.text + "' uses the same qubit twice");
    for (double p : params)
      if (!std::isfinite(p)) fail(FrontendErrorCategory::Semantic, name.line, "gate '" + name.text + "' has a non-finite parameter");
    gates_.push_back(GateInstance{*kind, std::move(qubits), std::move(params)});
  }

  void skip_balanced() {
    int depth = 1;
    while (depth > 0) {
      const Token& t = next();
      if (t.kind == Tok::End) fail(FrontendErrorCategory::Parse, t.line, "unbalanced parentheses");
      if (is_symbol(t, '(')) ++depth;
      if (is_symbol(t, ')')) --depth;
    }
  }

  std::size_t operand() {
    const Token& reg = next();
    if (reg.kind != Tok::Ident) fail(FrontendErrorCategory::Parse, reg.line, "expected qubit operand, found " + describe(reg));
    auto it = registers_.find(reg.text);
    if (it == registers_.end()) fail(FrontendErrorCategory::Semantic, reg.line, "undeclared register '" + reg.text + "'");
    if (!is_symbol(peek(), '[')) {
      fail(FrontendErrorCategory::UnsupportedConstruct, reg.line,
           "whole-register operand '" + reg.text + "' is not supported; index the qubit", "broadcast");
    }
    next();
    const Token& idx = next();
    if (idx.kind != Tok::Int) fail(FrontendErrorCategory::Parse, idx.line, "expected qubit index, found " + describe(idx));
    const std::size_t i = to_size(idx);
    if (i >= it->second.size) {
      fail(FrontendErrorCategory::Semantic, idx.line,
           "qubit index " + idx.text + " out of range for register '" + reg.text + "[" + std::to_string(it->second.size) + "]'");
    }
    expect_symbol(']', "after qubit index");
    return it->second.offset + i;
  }

  // expr := term (('+'|'-') term)*
  double expr() {
    double v = term();
    while (is_symbol(peek(), '+') || is_symbol(peek(), '-')) {
      const char op = next().text[0];
      const double r = term();
      v = op == '+' ? v + r : v - r;
    }
    return v;
  }

  double term() {
    double v = unary();
    while (is_symbol(peek(), '*') || is_symbol(peek(), '/')) {
      const Token& op = next();
      const double r = unary();
      if (op.text[0] == '/' && r == 0.0) fail(FrontendErrorCategory::Semantic, op.line, "division by zero in angle expression");
      v = op.text[0] == '*' ? v * r : v / r;
    }
    return v;
  }

  double unary() {
    if (is_symbol(peek(), '-')) {
      next();
      return -unary();
    }
    if (is_symbol(peek(), '+')) {
      next();
      return unary();
    }
    return primary();
  }

  double primary() {
    const Token& t = next();
    if (t.kind == Tok::Real || t.kind == Tok::Int) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
        fail(FrontendErrorCategory::Lex, t.line, "malformed number '" + t.text + "'");
      }
      return v;
    }
    if (t.kind == Tok::Ident && t.text == "pi") return std::numbers::pi;
    if (is_symbol(t, '(')) {
      const double v = expr();
      expect_symbol(')', "to close expression");
      return v;
    }
    if (t.kind == Tok::Ident) {
      fail(FrontendErrorCategory::UnsupportedConstruct, t.line,
           "identifier '" + t.text + "' is not allowed in angle expressions", "expression");
    }
    fail(FrontendErrorCategory::Parse, t.line, "expected an angle expression, found " + describe(t));
  }

  struct Register {
    std::size_t offset;
    std::size_t size;
  };

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool seen_include_ = false;
  std::map<std::string, Register, std::less<>> registers_;
  std::size_t n_qubits_ = 0;
  std::vector<GateInstance> gates_;
  std::vector<ForeignInstruction> foreign_;
};

std::string format_angle(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string FrontendError::to_string() const { return "line " + std::to_string(line) + ": " + message; }

std::string_view category_name(FrontendErrorCategory category) {
  switch (category) {
    case FrontendErrorCategory::Lex:
      return "lex";
    case FrontendErrorCategory::Parse:
      return "parse";
    case FrontendErrorCategory::Semantic:
      return "semantic";
    case FrontendErrorCategory::UnsupportedConstruct:
      return "unsupported_construct";
  }
  return "unknown";
}

bool is_foreign_instruction(std::string_view name) {
  return std::find(kForeignNames.begin(), kForeignNames.end(), name) != kForeignNames.end();
}

ParseResult parse(const SourceProgram& source) {
  try {
    Parser parser(lex(source.text));
    return parser.program();
  } catch (Failure& f) {
    return std::move(f.error);
  }
}

SourceProgram emit(const Circuit& circuit) {
  std::string out = "OPENQASM 2.0;\nqreg q[" + std::to_string(circuit.n_qubits()) + "];\n";
  for (const GateInstance& g : circuit.gates()) {
    out += gate_name(g.kind);
    if (!g.params.empty()) {
      out += '(';
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        if (i) out += ',';
        out += format_angle(g.params[i]);
      }
      out += ')';
    }
    out += ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) out += ',';
      out += "q[" + std::to_string(g.qubits[i]) + "]";
    }
    out += ";\n";
  }
  return SourceProgram{std::move(out), SourceOrigin::NativeQasm};
}

}  // namespace qcjudge
