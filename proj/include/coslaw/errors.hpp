#ifndef COSLAW_ERRORS_HPP
#define COSLAW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coslaw {

/// Base class for all precondition and domain failures raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: dimension mismatch, dimension out of range, or non-finite entries.
class InvalidMatrixError : public Error {
public:
    explicit InvalidMatrixError(const std::string& what) : Error(what) {}
};

/// Input matrix fails the normality test required by the eigensolver.
class NotNormalError : public Error {
public:
    explicit NotNormalError(const std::string& what) : Error(what) {}
};

/// An iterative scheme exhausted its budget without meeting its tolerance.
class NoConvergenceError : public Error {
public:
    explicit NoConvergenceError(const std::string& what) : Error(what) {}
};

/// Series argument lies outside the disk where the expansion is certified.
class OutsideDiskError : public Error {
public:
    explicit OutsideDiskError(const std::string& what) : Error(what) {}
};

/// Scalar or scan parameter outside the supported range.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Malformed or incomplete run configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace coslaw

#endif
