#pragma once

#include <stdexcept>
#include <string>

namespace lps {

/// Malformed or out-of-contract user input (bad file, non-positive size, ...).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource cap (configuration count, oracle size) was exceeded.
struct ResourceCapError : std::runtime_error {
    explicit ResourceCapError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An operation was called outside its contract, or an internal invariant broke.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace lps
