#pragma once

#include <stdexcept>
#include <string>

namespace dualgap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad value for an operation (division by zero, invalid surd, precision out of range).
struct DomainError : Error {
  using Error::Error;
};

// Mismatched vector/problem dimensions.
struct DimensionError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
      : Error(line_ > 0 ? "line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg
                        : msg),
        line(line_), col(col_) {}
};

// Instance shape outside what the implemented analyses cover.
struct UnsupportedError : Error {
  using Error::Error;
};

// Lattice set proved empty where a point was required.
struct EmptySetError : Error {
  using Error::Error;
};

// Caller violated a documented precondition.
struct PreconditionError : Error {
  using Error::Error;
};

// The multiplier system for a requested certificate has no solution. Under
// the documented preconditions one always exists, so this signals they were
// violated rather than a solver failure.
struct CertificateNotFoundError : Error {
  using Error::Error;
};

// File could not be opened or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace dualgap
