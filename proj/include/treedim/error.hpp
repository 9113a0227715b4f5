#pragma once

#include <stdexcept>
#include <string>

namespace treedim {

// Contract violations: bad arguments, out-of-range queries, malformed input.
// The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An exact self-check failed. Indicates a bug in this library, not bad input.
class InternalCheckError : public std::runtime_error {
 public:
  explicit InternalCheckError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace treedim
