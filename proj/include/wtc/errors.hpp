#pragma once

#include <stdexcept>
#include <string>

namespace wtc {

// Thrown when a numerical routine fails on otherwise valid input
// (non-finite result, eigensolver failure, runaway line search).
// Argument errors use std::invalid_argument.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wtc
