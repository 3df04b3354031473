#pragma once

#include <stdexcept>
#include <string>

namespace sfast {

/// An arc set refers to an arc that is not present in the host graph.
class InvalidArcError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A proved structural property failed to hold; always an implementation bug
/// or a violated precondition upstream.
class InternalInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Caller violated an operation precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Brute-force or table-based routine refuses an input beyond its scale guard.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance or solution text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sfast
