#pragma once

#include <stdexcept>
#include <string>

namespace gaseg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: bad cube side, bad GA rates, c < 1, ...
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Inputs that disagree with each other (label count vs bin count, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for an exhaustive method.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported image file.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Filesystem read/write failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaseg
