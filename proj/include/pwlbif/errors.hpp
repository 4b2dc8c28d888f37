#pragma once

#include <stdexcept>
#include <string>

namespace pwlbif {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain where the operation is defined.
struct DomainError : Error {
    using Error::Error;
};

/// A homoclinic reduction was requested where its construction is invalid
/// (an intermediate iterate is on the wrong side of the switching line, or
/// the saddle does not exist).
struct ValidityError : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NoFixedPoint : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace pwlbif
