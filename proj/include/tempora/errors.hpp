#pragma once

#include <stdexcept>
#include <string>

namespace tempora {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tick or external index outside the finite grid.
struct OutOfRangeError : Error {
    using Error::Error;
};

/// Contract violation detected before an operation runs (e.g. mismatched
/// concatenation offset c != k1 - k2).
struct PreconditionError : Error {
    using Error::Error;
};

/// A constructed time scale transformation violates monotonicity or
/// initial-segment surjectivity; carries the violating tick in the message.
struct InvalidConcatenationError : Error {
    using Error::Error;
};

struct IncompatibleSignalsError : Error {
    using Error::Error;
};

struct IncompatibleSystemsError : Error {
    using Error::Error;
};

/// Some signal value is covered by no quantizer cell.
struct UncoveredValueError : Error {
    using Error::Error;
};

/// Quantizer overlap branching exceeded the configured cap.
struct BranchCapError : Error {
    using Error::Error;
};

/// Closure requires a concatenation that leaves the finite grid and no
/// prefix witness exists inside it.
struct HorizonOverflowError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

struct GenerationExhaustedError : Error {
    using Error::Error;
};

}  // namespace tempora
