#pragma once

#include <stdexcept>
#include <string>

namespace savgol {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A FilterSpec violates one of its invariants (n >= 1, m >= 1, 2m+1 > n).
class SpecError : public Error {
public:
    using Error::Error;
};

/// An argument other than the spec is invalid: mismatched lengths, a series
/// that is too short, a probability outside (0, 1), degenerate data, or a
/// contract violation such as passing a biased estimate where an unbiased
/// one is required.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A linear system is numerically singular or an ill-conditioned fit was
/// detected.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// No stable plateau could be found in a sweep table; the data needs manual
/// inspection.
class NoPlateauError : public Error {
public:
    using Error::Error;
};

} // namespace savgol
