#pragma once

#include <stdexcept>
#include <string>

namespace kfb {

// Base of all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed user input: parse errors, bad arguments, unknown labels. CLI exit 1.
struct InputError : Error {
    using Error::Error;
};

// A structural law of a complex is violated, or an operation was applied to a
// complex that does not satisfy its precondition. CLI exit 2.
struct ValidationError : Error {
    using Error::Error;
};

// The tool contradicted itself (window instability, a certified inequality
// failing on computed data). Must never happen; CLI exit 3.
struct InternalError : Error {
    using Error::Error;
};

} // namespace kfb
