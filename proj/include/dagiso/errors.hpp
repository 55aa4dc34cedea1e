#pragma once

#include <stdexcept>
#include <string>

namespace dagiso {

/// Base class for all dagiso contract violations. Phase failures of the
/// construction pipeline are ordinary return values, not exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverlappingSets : public Error {
 public:
  using Error::Error;
};

class EmptySide : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class UniverseTooLarge : public Error {
 public:
  using Error::Error;
};

class NodeSetMismatch : public Error {
 public:
  using Error::Error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class ConflictingOrientation : public Error {
 public:
  using Error::Error;
};

class MissingEdge : public Error {
 public:
  using Error::Error;
};

class InvalidQuery : public Error {
 public:
  using Error::Error;
};

/// Enumeration request beyond the supported node counts.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              std::move(message)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace dagiso
