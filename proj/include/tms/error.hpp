#pragma once

#include <stdexcept>
#include <string>

namespace tms {

// Input violates an operation's precondition (bad shape, non-primitive matrix, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver failed to converge or produced a non-finite result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RigidityErrorKind {
  no_match,
  not_in_G,
  bad_terminal,
  precondition_E0_count,
  not_invertible,
  degenerate,
  wrong_base,
};

const char* to_string(RigidityErrorKind kind);

class RigidityError : public std::runtime_error {
 public:
  RigidityError(RigidityErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  RigidityErrorKind kind() const noexcept { return kind_; }

 private:
  RigidityErrorKind kind_;
};

}  // namespace tms
