#pragma once

#include <stdexcept>
#include <string>

namespace matchcover {

/// Raised when an internal invariant that the algorithms guarantee is found
/// broken at runtime. The CLI maps it to exit code 3.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The regularity refinement could not keep the exceptional class within
/// gamma * n at the current scale.
class RefinementOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single-pass edge stream was read a second time.
class SinglePassViolation : public std::logic_error {
 public:
  SinglePassViolation() : std::logic_error("single-pass violated") {}
};

/// A buffer above the top cascade level would have been needed.
class CascadeOverflow : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

/// A deamortized phase did not finish inside its update window.
class PhaseDeadlineMissed : public std::runtime_error {
 public:
  PhaseDeadlineMissed(std::string phase, const std::string& detail)
      : std::runtime_error("phase '" + phase + "' missed its deadline: " + detail),
        phase_(std::move(phase)) {}
  const std::string& phase() const noexcept { return phase_; }

 private:
  std::string phase_;
};

}  // namespace matchcover
