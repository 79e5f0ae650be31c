#pragma once

#include <stdexcept>
#include <string>

namespace thermores {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (non-square input, mismatched dimensions, bad index set).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar parameter lies outside its admissible range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A matrix failed density-matrix validation. The kind says which check tripped.
class ValidationError : public Error {
public:
    enum class Kind { NonFinite, Shape, Hermiticity, Trace, Positivity };

    ValidationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// The Liouvillian has more than one (or no) eigenvalue at zero.
class DegenerateSteadyStateError : public Error {
public:
    DegenerateSteadyStateError(int multiplicity, const std::string& what)
        : Error(what), multiplicity_(multiplicity) {}

    int multiplicity() const noexcept { return multiplicity_; }

private:
    int multiplicity_;
};

/// A map that should be completely positive has a Choi eigenvalue below the noise floor.
class NotCompletelyPositiveError : public Error {
public:
    using Error::Error;
};

}  // namespace thermores
