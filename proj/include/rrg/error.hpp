#pragma once

#include <stdexcept>
#include <string>

namespace rrg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A GraphSpec that violates handshake parity or z < n.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A configured computational budget was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Iterative numerics failed (e.g. eigensolver non-convergence).
class NumericError : public Error {
public:
    using Error::Error;
};

/// The Laplacian kernel is not one-dimensional.
class DisconnectedGraph : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace rrg
