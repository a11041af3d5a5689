#pragma once

#include <stdexcept>
#include <string>

namespace centrolab {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto its exit-code taxonomy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user configuration: unknown keys, out-of-range values, unsupported tags.
class ConfigError : public Error {
public:
    using Error::Error;
};

class InvalidDimensionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class InvalidIndexError : public Error {
public:
    using Error::Error;
};

/// Non-finite or otherwise unusable numeric input.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A computation was asked to do something it cannot diagnose meaningfully
/// (unconverged spectrum, zero-variance samples).
class DiagnosticError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

/// Enumeration budget exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace centrolab
