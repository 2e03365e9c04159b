#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid configuration or invalid input data (bad measure, bad grid
/// resolution, out-of-range parameters). Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Failure during an otherwise valid run (counting error, I/O). CLI exit 1.
struct RunError : std::runtime_error {
    explicit RunError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nodal
