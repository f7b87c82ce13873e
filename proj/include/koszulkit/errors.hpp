#pragma once

#include <stdexcept>
#include <string>

namespace koszulkit {

/// Input could not be parsed or validated (CLI exit code 2).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line = 0, int col = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", col " +
                                          std::to_string(col) + ": " + msg
                                    : msg),
        line(line),
        col(col) {}
  int line, col;
};

/// A certificate engine failed (CLI exit code 3).
class EngineError : public std::runtime_error {
 public:
  explicit EngineError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A requested task cannot run on this input (CLI exit code 4).
class DependencyError : public std::runtime_error {
 public:
  explicit DependencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace koszulkit
