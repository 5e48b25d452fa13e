#pragma once

#include <stdexcept>
#include <string>

namespace woodshole {

// Exit codes shared by the library error hierarchy and the CLI.
enum class ExitCode : int {
  kPass = 0,
  kRelationFailure = 1,
  kInputError = 2,
  kNumericalFailure = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Malformed input: bad files, dimension mismatches, out-of-range indices.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(ExitCode::kInputError, what) {}
};

// Path tracking failed, a chart was ill-conditioned, a count did not match.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ExitCode::kNumericalFailure, what) {}
};

// The input violates a hypothesis of the relation being checked
// (dicritic field, degenerate singularity, base point, non-transversal map).
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what)
      : Error(ExitCode::kNumericalFailure, what) {}
};

}  // namespace woodshole
