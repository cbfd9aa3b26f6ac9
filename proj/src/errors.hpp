#pragma once

#include <stdexcept>
#include <string>

namespace qksvm {

// Base of all library errors. The C API maps the three subclasses onto
// distinct status codes, so every throw site should pick the right one.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad hyperparameters, domain violations, mismatched dimensions in a call.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// Malformed datasets and file-level problems.
class DataError : public Error {
  public:
    using Error::Error;
};

// Convergence failures, insufficient truncation, singular systems.
class NumericError : public Error {
  public:
    using Error::Error;
};

} // namespace qksvm
