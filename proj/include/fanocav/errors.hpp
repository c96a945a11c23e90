#pragma once

#include <stdexcept>
#include <string>

namespace fanocav {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative power, zero frequency, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A denominator vanished exactly or to machine precision.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// A closed-form evaluator was called outside the regime it was derived for.
class AssumptionError : public Error {
public:
    using Error::Error;
};

/// The steady-state iteration ran out of iterations. Carries the last iterate so callers
/// can inspect it or reseed from it (a stalled iteration often signals bistability).
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_x1, double last_x2, int iterations)
        : Error(what), last_x1_(last_x1), last_x2_(last_x2), iterations_(iterations) {}

    double last_x1() const noexcept { return last_x1_; }
    double last_x2() const noexcept { return last_x2_; }
    int iterations() const noexcept { return iterations_; }

private:
    double last_x1_;
    double last_x2_;
    int iterations_;
};

/// The steady-state iteration produced a non-finite iterate.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// The linear sideband system could not be solved to the required residual.
class ConditioningError : public Error {
public:
    ConditioningError(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

/// Fewer spectral features than the analysis requires (e.g. single-Fano regime).
class InsufficientFeaturesError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid configuration document.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line) : Error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fanocav
