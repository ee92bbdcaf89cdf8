#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace noncollide {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input.  Everything that is the caller's fault derives from here.
class DomainError : public Error {
public:
    using Error::Error;
};

class ChamberViolation : public DomainError {
public:
    ChamberViolation(std::size_t index, const std::string& what);
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class NonFinite : public DomainError {
public:
    using DomainError::DomainError;
};

class NonPositiveTime : public DomainError {
public:
    using DomainError::DomainError;
};

class TimeOrdering : public DomainError {
public:
    using DomainError::DomainError;
};

class SizeMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class SizeLimit : public DomainError {
public:
    using DomainError::DomainError;
};

class ParamMissing : public DomainError {
public:
    using DomainError::DomainError;
};

class BesselIndexOutOfRange : public DomainError {
public:
    using DomainError::DomainError;
};

class BetaOutOfRange : public DomainError {
public:
    using DomainError::DomainError;
};

class NuOutOfRange : public DomainError {
public:
    using DomainError::DomainError;
};

class IntegrableSingularity : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateSpectrum : public DomainError {
public:
    using DomainError::DomainError;
};

class RouteInapplicable : public DomainError {
public:
    using DomainError::DomainError;
};

// Numerical trouble.
class NumericalUnderflow : public Error {
public:
    NumericalUnderflow(double log_value, const std::string& what);
    // natural log of |value| that could not be represented
    double log_value() const noexcept { return log_value_; }

private:
    double log_value_;
};

class Overflow : public Error {
public:
    using Error::Error;
};

class DivisionDegeneracy : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class QuadratureUnstable : public Error {
public:
    using Error::Error;
};

class TailNotConverging : public Error {
public:
    using Error::Error;
};

class StepFloorReached : public Error {
public:
    using Error::Error;
};

class BlowUp : public Error {
public:
    using Error::Error;
};

}  // namespace noncollide
