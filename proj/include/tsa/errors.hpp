#pragma once

#include <stdexcept>
#include <string>

namespace tsa {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent user input (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

class FormatError : public InputError {
public:
    using InputError::InputError;
};

// A TLE line whose modulo-10 checksum does not match column 69.
class ChecksumError : public FormatError {
public:
    using FormatError::FormatError;
};

class RangeError : public FormatError {
public:
    using FormatError::FormatError;
};

class MissingFileError : public InputError {
public:
    using InputError::InputError;
};

// A station references a constellation the scenario does not define, or an
// id filter matches nothing.
class CrossReferenceError : public InputError {
public:
    using InputError::InputError;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

// SGP4 reported a model failure (decay, eccentricity out of range, ...).
class DecayError : public InputError {
public:
    DecayError(int code, const std::string& what) : InputError(what), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

// No access window exists anywhere in the analysed scope (exit code 3).
class EmptyNetworkError : public Error {
public:
    using Error::Error;
};

// Numerical failure (exit code 4).
class NumericalError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivisionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace tsa
