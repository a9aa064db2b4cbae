#pragma once

#include <stdexcept>
#include <string>

namespace tbg {

/// Point lies outside the validity region of a chart.
class ChartDomainError : public std::runtime_error {
 public:
  explicit ChartDomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A callable was evaluated at a dual-number depth it was not built for.
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Metric (or other) matrix could not be inverted.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Expression evaluated outside the mathematical domain of a function (log, sqrt, ...).
class EvalDomainError : public std::runtime_error {
 public:
  explicit EvalDomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Expression text failed to parse; `offset` is the byte position of the error.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Malformed job configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate input to the ODE integrator (non-finite or already past the blow-up threshold).
class DegenerateInputError : public std::runtime_error {
 public:
  explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tbg
