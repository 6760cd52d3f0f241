#pragma once

#include <stdexcept>
#include <string>

namespace gopt {

// Base of every error raised by the library. Callers that only care about
// "something was wrong with the request" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point lies outside the box it is evaluated or snapped on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A function was asked for a dimension it does not support.
class ArityError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// A grid is too large to materialize.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Sampling from an empty marked (or unmarked) set.
class EmptySetError : public Error {
 public:
  using Error::Error;
};

// Invalid user-facing configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gopt
