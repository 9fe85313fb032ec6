#pragma once

#include <stdexcept>
#include <string>

namespace qcjudge {

// Wrong parameter count or malformed gate definition request.
class DefinitionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Qubit cap exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDecomposition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem-file schema violation. The message names the file and the field.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MetricsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qcjudge
