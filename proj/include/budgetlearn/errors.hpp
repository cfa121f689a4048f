#pragma once

#include <stdexcept>
#include <string>

namespace budgetlearn {

// Malformed input files (CSV rows, config documents).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value in an otherwise well-formed file lies outside its legal range.
struct RangeError : ParseError {
    using ParseError::ParseError;
};

// A caller violated an operation's precondition.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Invalid experiment configuration (budgets, kernel parameters, flags).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite values produced by numeric iteration.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// I/O failure, carries the offending path in the message.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace budgetlearn
