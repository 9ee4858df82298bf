#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace xsdep {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Panel is not balanced: some units do not cover the full time grid.
class BalanceError : public Error {
public:
    BalanceError(std::string msg, std::vector<long> units)
        : Error(std::move(msg)), offending_units(std::move(units)) {}
    std::vector<long> offending_units;
};

/// A cell in the input could not be parsed as a number.
class ParseError : public Error {
public:
    ParseError(std::string msg, long row, long col)
        : Error(std::move(msg)), row(row), col(col) {}
    long row;
    long col;
};

/// Dimension requirements violated (e.g. T <= p, N too small).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Section design matrix is rank deficient at the working tolerance.
class SingularDesignError : public Error {
public:
    SingularDesignError(std::string msg, long section)
        : Error(std::move(msg)), section(section) {}
    long section;
};

/// A residual (or raw) vector is identically zero / constant.
class DegenerateResidualError : public Error {
public:
    DegenerateResidualError(std::string msg, long section)
        : Error(std::move(msg)), section(section) {}
    long section;
};

/// Residual degrees of freedom too small for the requested statistic.
class DegreesOfFreedomError : public Error {
public:
    using Error::Error;
};

/// Two test outcomes fed to a combiner were not computed on the same data.
class InputMismatchError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Matrix has an eigenvalue below the PSD tolerance.
class NotPsdError : public Error {
public:
    using Error::Error;
};

/// Matrix expected to be symmetric is not.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// Requested brute-force computation exceeds the safety work bound.
class TooLargeError : public Error {
public:
    using Error::Error;
};

/// Too many Monte Carlo replications failed to produce a result.
class SimAbortError : public Error {
public:
    using Error::Error;
};

}  // namespace xsdep
