#pragma once

#include <stdexcept>
#include <string>

namespace discvar {

/// Raised when an operation is called with arguments that violate its
/// preconditions (mismatched rings, unknown variables, bad sizes).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a Groebner computation hits a configured limit. `progress`
/// carries a human-readable summary of how far the computation got.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  ResourceLimitExceeded(const std::string& what, std::string progress)
      : std::runtime_error(what), progress_(std::move(progress)) {}

  const std::string& progress() const noexcept { return progress_; }

 private:
  std::string progress_;
};

}  // namespace discvar
