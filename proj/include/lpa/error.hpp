#ifndef LPA_ERROR_HPP
#define LPA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lpa {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON schema, bad element grammar, bad identifiers.
/// Carries a position when the source is a flat string.
struct ParseError : Error {
    explicit ParseError(const std::string& msg, std::size_t pos = std::string::npos)
        : Error(pos == std::string::npos ? msg : msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

/// A structural precondition of an operation does not hold
/// (e.g. a witness was requested for a verdict that does not fail).
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace lpa

#endif
