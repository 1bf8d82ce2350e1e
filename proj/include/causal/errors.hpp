#pragma once

#include <stdexcept>
#include <string>

namespace causal {

/// Precondition violated by the caller (bad parameter, argument outside domain).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested derivative order exceeds what the stencil engine supports.
class UnsupportedOrder : public InputError {
 public:
  using InputError::InputError;
};

/// Extension order too small for the extended distribution to be integrable.
class NonIntegrable : public InputError {
 public:
  using InputError::InputError;
};

/// A numerical procedure failed to reach its tolerance or diverged.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scaling fit did not follow a power law.
class IndeterminateOrder : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

}  // namespace causal
