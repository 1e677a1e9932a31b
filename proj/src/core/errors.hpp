#pragma once

#include <stdexcept>
#include <string>

namespace pv {

struct DegenerateConfiguration : std::runtime_error {
  explicit DegenerateConfiguration(const std::string& what)
      : std::runtime_error(what) {}
};

struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what)
      : std::runtime_error(what) {}
};

struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

struct BoundsError : std::runtime_error {
  BoundsError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

struct InfeasibleSpec : std::runtime_error {
  explicit InfeasibleSpec(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace pv
