#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace grkhs {

/// Precondition violated by the caller (bad dimension, out-of-range parameter).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured work or memory guard was hit before the computation finished.
/// `partial_lower_bound` carries whatever was established before stopping
/// (e.g. "n is at least this large"); zero when nothing meaningful is known.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what, std::uint64_t partial_lower_bound = 0)
      : std::runtime_error(what), partial_lower_bound_(partial_lower_bound) {}

  std::uint64_t partial_lower_bound() const noexcept { return partial_lower_bound_; }

 private:
  std::uint64_t partial_lower_bound_;
};

/// The requested quantity is undefined for this input (e.g. an asymptotic
/// decay rate of a finite explicit shape list).
class NotApplicable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Floating-point evaluation left the representable range.
class EvaluationOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace grkhs
