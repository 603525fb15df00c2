#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acpm {

// Expression or manifest text could not be parsed. Carries the byte offset
// of the offending character in the source string.
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// An identifier that is neither a declared coordinate, a declared parameter
// nor a known function name.
class UnknownIdentifier : public std::runtime_error {
public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : std::runtime_error("unknown identifier '" + name + "'"),
        name_(name), offset_(offset) {}
  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

private:
  std::string name_;
  std::size_t offset_;
};

// Evaluation left the domain of a function: log/sqrt of a non-positive
// value, or division by zero at the sample point.
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DegenerateMetric : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FrameFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class InvalidSlots : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sectional curvature requested for a (numerically) degenerate plane,
// including light-like spans.
class DegeneratePlane : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class UnknownBuiltin : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by checks whose precondition is a validated contact structure.
class StructureInvalid : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad manifest file or CLI input; maps to exit code 2.
class ManifestError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace acpm
