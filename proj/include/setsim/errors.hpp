#pragma once

#include <stdexcept>
#include <string>

namespace setsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (scenario files, CSV imports, CLI values).
struct ParseError : Error {
  using Error::Error;
};

// Structurally valid input that violates a documented constraint.
// The message names the offending field.
struct ValidationError : Error {
  using Error::Error;
};

// Out-of-domain argument to a numeric operation.
struct DomainError : Error {
  using Error::Error;
};

// Timestamps fed out of order.
struct OrderingError : Error {
  using Error::Error;
};

// An event that cannot occur in the controller's current mode.
struct IllegalTransition : Error {
  using Error::Error;
};

// A statistic was requested before any data existed to support it.
struct InsufficientData : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct InternalError : Error {
  using Error::Error;
};

}  // namespace setsim
