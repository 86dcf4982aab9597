#ifndef QCOC_ERROR_HPP
#define QCOC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcoc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a 0-based character offset when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what : what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input that violates a mathematical precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed the configured degree or memory bounds.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcoc

#endif
