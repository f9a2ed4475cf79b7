#pragma once

#include <stdexcept>
#include <string>

namespace banditlab {

// Invalid configuration or dimension mismatch (CLI exit code 1).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite or otherwise unusable data fed to an update.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical degeneracy: non-PD matrix, eigensolver failure.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematically supported domain.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Unwritable/unreadable path (CLI exit code 3).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace banditlab
