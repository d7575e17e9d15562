#pragma once

#include <stdexcept>
#include <string>

namespace aspir8 {

/// Argument outside the mathematical domain of a law (e.g. non-positive area).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base for failures raised while advancing the solver.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aspir8
