#pragma once

#include <stdexcept>
#include <string>

namespace gsm {

/// Bad input to a library call (violated precondition, non-finite value, size mismatch).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weighted quaternion blend whose sum cancelled out (antipodal inputs).
class DegenerateBlend : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too many kernels for the requested map resolution.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Optimization or algorithm could not proceed (non-finite gradient, no shared labels, ...).
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gsm
