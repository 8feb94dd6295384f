#pragma once

#include <stdexcept>
#include <string>

namespace diminimal {

/// Malformed input or a violated precondition (bad ids, cycles, unsupported family, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A constructed object failed one of its exact self-checks.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace diminimal
