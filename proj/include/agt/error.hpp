#pragma once

#include <stdexcept>
#include <string>

namespace agt {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (Pauli labels, circuit files, state descriptors).
struct ParseError : Error {
    using Error::Error;
};

// Numeric argument outside its admissible range.
struct DomainError : Error {
    using Error::Error;
};

// Qubit index out of range or aliased.
struct IndexError : Error {
    using Error::Error;
};

// Mismatched shapes: term lengths, qubit counts, vector dimensions.
struct StructuralError : Error {
    using Error::Error;
};

// Gate outside the supported set for the requested operation.
struct UnsupportedGateError : Error {
    using Error::Error;
};

// Simulation budget exceeded.
struct ResourceError : Error {
    using Error::Error;
};

// A condition that indicates a bug rather than bad input.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace agt
