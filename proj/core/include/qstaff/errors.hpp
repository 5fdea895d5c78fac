#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qstaff {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Arguments outside an operation's contract (bad range, wrong policy kind, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Offered load at or beyond the stability boundary of the policy.
class StabilityError : public DomainError {
public:
  explicit StabilityError(const std::string& msg) : DomainError(msg) {}
};

/// A policy series was evaluated at or beyond its radius of convergence.
class DivergenceError : public DomainError {
public:
  explicit DivergenceError(const std::string& msg) : DomainError(msg) {}
};

/// An iterative solver failed to reach its residual target.
class ConvergenceError : public Error {
public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// Two algebraically equivalent routes disagreed beyond tolerance.
class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

/// An inverse problem expected to have one root turned out to have several.
/// Carries every root located at scan resolution.
class MultiRootError : public Error {
public:
  MultiRootError(const std::string& msg, std::vector<double> roots)
      : Error(msg), roots_(std::move(roots)) {}
  const std::vector<double>& roots() const noexcept { return roots_; }

private:
  std::vector<double> roots_;
};

/// Malformed user input (policy spec strings, series files).
class SpecError : public Error {
public:
  explicit SpecError(const std::string& msg) : Error(msg) {}
};

}  // namespace qstaff
