#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace grm {

// Arithmetic between elements of two different field specs.
struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A factorization was requested for a polynomial that does not satisfy the
// vanishing hypothesis; `witness` is a point where it fails.
struct VanishingError : std::invalid_argument {
    VanishingError(const std::string& msg, std::vector<std::uint8_t> witness_point)
        : std::invalid_argument(msg), witness(std::move(witness_point)) {}
    std::vector<std::uint8_t> witness;
};

// An enumeration would exceed the configured work budget.
struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace grm
