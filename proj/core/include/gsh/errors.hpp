#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsh {

// Invalid parameters or option combinations. The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable input or unwritable output. The CLI maps this to exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed edge-list content. `line` is 1-based; 0 means the file as a whole.
struct ParseError : IoError {
  ParseError(std::size_t line_number, const std::string& what_arg)
      : IoError("line " + std::to_string(line_number) + ": " + what_arg),
        line(line_number) {}
  explicit ParseError(const std::string& what_arg) : IoError(what_arg), line(0) {}

  std::size_t line;
};

}  // namespace gsh
