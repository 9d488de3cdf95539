#pragma once

#include <stdexcept>
#include <string>

namespace qugan {

// Invalid run configuration (bad qubit counts, nonsensical hyperparameters).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument to a library operation (bad qubit index, length mismatch).
struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Unusable input data (empty dataset, degenerate dimension).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be opened or read.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed text input; carries a 1-based line number when known.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, long line)
        : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_number(line) {}
    long line_number;
};

// Training loop hit a non-finite cost or similar irrecoverable state.
struct TrainingError : std::runtime_error {
    explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qugan
