#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tgraph {

/// Domain error with a stable name, suitable for machine-readable reporting.
/// The name is one of the fixed identifiers used across the library
/// (DanglingEndpoint, ConditionIIViolation, HasLoops, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Malformed input (bad file syntax or schema), distinct from domain errors.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tgraph
