#pragma once

#include <stdexcept>
#include <string>

namespace fdrum {

// Invalid user-facing configuration (bad spec fields, malformed options).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A resource cap (pixel or triangle budget) would be exceeded.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure in the eigensolver or a factorization.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fdrum
