#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asrjudge {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A caller-supplied value violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Audio container or sample format the library does not handle.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Numerically degenerate input (constant channel, rank-1 covariance, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure: missing file, unwritable directory.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace asrjudge
