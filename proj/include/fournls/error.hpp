#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fournls {

/// Grid or truncation too small for the requested transform.
class SizingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands with mismatched truncation radius.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A frequency or parameter outside the admissible range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed state/trajectory file. The message names the offending record.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VersionError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Non-finite amplitude produced by a time step.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(std::size_t step_index, const std::string& what)
      : std::runtime_error(what + " at step " + std::to_string(step_index)),
        step_index_(step_index) {}

  std::size_t step_index() const noexcept { return step_index_; }

 private:
  std::size_t step_index_;
};

}  // namespace fournls
