#pragma once

#include <stdexcept>
#include <string>

namespace cbcop {

// Raised when input data or configuration fails validation (malformed CSV,
// a pmf that does not sum to one, mismatched dimensions, ...).  Callers that
// map errors to process exit codes treat this as "bad input" as opposed to
// an internal numeric failure.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cbcop
