#pragma once

#include <stdexcept>
#include <string>

namespace vmafc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something unusable: bad file, wrong geometry, argument out
/// of domain. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class FormatError : public InputError {
 public:
  using InputError::InputError;
};

class GeometryError : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Internal invariant broken (exit code 1).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace vmafc
