#pragma once

#include <stdexcept>
#include <string>

namespace jscc {

// Exception hierarchy shared by every module. The CLI maps these onto its
// stable exit codes (config = 2, capacity = 3, I/O = 4).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Codec or bound parameter that violates its construction rules.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Enumerated decoder would exceed its search-size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace jscc
