#pragma once

#include <stdexcept>
#include <string>

namespace maxload {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments, malformed files, unsatisfiable index ranges. CLI exit 64.
struct InvalidInputError : Error {
    using Error::Error;
};

// Guessing exhausted its (order, degree) budget without a verified operator.
// CLI exit 65.
struct GuessExhaustedError : Error {
    using Error::Error;
};

// A configured ceiling (state count, exact-path tMax, ...) would be exceeded.
// CLI exit 66.
struct ResourceLimitError : Error {
    using Error::Error;
};

// The precision-doubling check disagreed too badly to trust the result.
// CLI exit 67.
struct PrecisionError : Error {
    using Error::Error;
};

}  // namespace maxload
