#pragma once

#include <stdexcept>
#include <string>

namespace netdiv {

// Input file could not be parsed; carries the 1-based line number.
struct parse_error : std::runtime_error {
  std::size_t line;
  parse_error(std::size_t line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct empty_input_error : std::invalid_argument {
  explicit empty_input_error(const std::string& what_) : std::invalid_argument(what_) {}
};

struct config_error : std::invalid_argument {
  explicit config_error(const std::string& what_) : std::invalid_argument(what_) {}
};

// Iterative eigensolve did not reach the requested residual; carries the best iterate.
struct convergence_error : std::runtime_error {
  double best_value;
  double residual;
  convergence_error(const std::string& what_, double best, double res)
      : std::runtime_error(what_), best_value(best), residual(res) {}
};

}  // namespace netdiv
