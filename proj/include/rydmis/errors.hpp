#pragma once

#include <stdexcept>
#include <string>

namespace rydmis {

// Thrown when a configurable resource cap (basis dimension, enumeration
// output count, measurement budget handled in-band elsewhere) is exceeded.
// The CLI maps this to its own exit code, distinct from invalid input.
struct CapExceededError : std::runtime_error {
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rydmis
