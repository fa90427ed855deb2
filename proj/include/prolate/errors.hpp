#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace prolate {

/// Failure of a numerical stage (non-convergence, lost bracket, ...).
/// The stage label identifies which part of the pipeline gave up.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace prolate
