#pragma once
#include <stdexcept>
#include <string>

namespace fiscomp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter violates its admissible range or a type invariant.
struct InvalidParameterError : Error {
    using Error::Error;
};

// The reduced-form demand denominator (or a closure denominator) is <= 0;
// the configuration is economically inadmissible.
struct NonpositiveDenominatorError : InvalidParameterError {
    using InvalidParameterError::InvalidParameterError;
};

// Vector/matrix operands disagree in dimension, or an operand is empty.
struct DimensionMismatchError : Error {
    using Error::Error;
};

// Composition weights do not sum to one.
struct WeightSumError : InvalidParameterError {
    using InvalidParameterError::InvalidParameterError;
};

// A simulated path produced a NaN or infinity.
struct NonFinitePathError : Error {
    using Error::Error;
};

// A config file could not be parsed or contains an unknown/invalid key.
struct ConfigError : Error {
    using Error::Error;
};

// Bad command or operation argument (unknown sweep parameter, steps < 2, ...).
struct ArgumentError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace fiscomp
