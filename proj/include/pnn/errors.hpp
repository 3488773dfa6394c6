#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pnn {

// Bad input from the caller or from a file. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : InputError(line ? "line " + std::to_string(line) + ": " + detail : detail),
        line_(line),
        detail_(detail) {}

  // 1-based; 0 when the error is not tied to a line (e.g. empty input).
  std::size_t line() const noexcept { return line_; }
  // Message without the line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

// A solve produced a non-finite objective. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pnn
