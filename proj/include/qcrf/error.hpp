#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcrf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different coordinate patches, or a tensor has the wrong shape/degree.
class InstanceError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold (e.g. A^3 + A != 0).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested operation needs data the instance does not provide.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `position` is a 0-based character offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qcrf
