#pragma once

#include <stdexcept>

namespace fraudml {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration or misuse of an API (CLI exit code 1).
struct UsageError : Error {
    using Error::Error;
};

// Malformed or inconsistent input data (CLI exit code 2).
struct DataError : Error {
    using Error::Error;
};

// Failure while fitting or evaluating a model (CLI exit code 3).
struct TrainError : Error {
    using Error::Error;
};

}  // namespace fraudml
