#ifndef SIMON_ERRORS_HPP
#define SIMON_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simon {

// Syntax error in the textual presentation / word / hom formats.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t line, std::size_t column)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A configured resource cap (vertex budget) was exceeded.
class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument at an API boundary (unknown letter, bad anchor, ...).
class InvalidArgument : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace simon

#endif
