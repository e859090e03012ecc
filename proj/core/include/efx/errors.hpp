#pragma once

#include <stdexcept>
#include <string>

namespace efx {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a state contradicts something the correctness argument
// guarantees (an uncovered case, a failed structural assertion, a
// non-improving step). Always a bug, never an input problem.
struct ProofViolation : std::logic_error {
  explicit ProofViolation(const std::string& msg) : std::logic_error(msg) {}
};

struct StepCapExceeded : std::runtime_error {
  explicit StepCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct TooLarge : std::runtime_error {
  explicit TooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace efx
