#pragma once

#include <stdexcept>

namespace ditray {

// Error taxonomy shared across the library. The CLI maps these onto its
// exit-code contract (see cli.hpp).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments or malformed input.
struct UsageError : Error {
    using Error::Error;
};

// Input that is well-formed but outside the domain an operation is defined on.
struct DomainError : Error {
    using Error::Error;
};

struct ZeroVectorError : DomainError {
    using DomainError::DomainError;
};

struct InadmissibleEncodingError : DomainError {
    using DomainError::DomainError;
};

struct PromiseViolationError : DomainError {
    using DomainError::DomainError;
};

// Work would exceed a configured cap.
struct ResourceLimitError : Error {
    using Error::Error;
};

}  // namespace ditray
