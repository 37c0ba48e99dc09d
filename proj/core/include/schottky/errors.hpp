#pragma once

#include <stdexcept>
#include <string>

namespace schottky {

/// Malformed or out-of-contract input (bad prime, singular matrix, missing data).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input the verifier deliberately does not handle
/// (type-swapping tree isometries, non-prime plane orders).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A broken internal invariant. Reaching this is a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace schottky
