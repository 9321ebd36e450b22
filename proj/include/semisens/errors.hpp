#pragma once

#include <stdexcept>
#include <string>

namespace semisens {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An element was used as if it belonged to a semigroup it is not a member of.
class NotAMember : public Error {
 public:
  using Error::Error;
};

/// An expanding map was iterated past the point's precision budget.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// A tail window {g >= g0} has no elements inside the requested box.
class EmptyTail : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The classifier could not place a system on either side of the dichotomy.
class InconclusiveVerdict : public Error {
 public:
  using Error::Error;
};

}  // namespace semisens
