#pragma once

#include <stdexcept>
#include <string>

namespace wgqed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (bad mode indices, non-positive sizes, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A quantity was requested outside its mathematical domain: an evanescent
/// mode, a branch point of the Lamb-shift function, a divergent density of states.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Energy falls within the guard margin of a cutoff frequency.
class BoundaryError : public DomainError {
public:
    BoundaryError(const std::string& what, double energy, double cutoff)
        : DomainError(what), energy_(energy), cutoff_(cutoff) {}

    double energy() const noexcept { return energy_; }
    double cutoff() const noexcept { return cutoff_; }

private:
    double energy_;
    double cutoff_;
};

/// The resolvent f(E) vanished, so the excitation amplitudes are undefined.
class SingularResolvent : public DomainError {
public:
    using DomainError::DomainError;
};

/// The principal-value quadrature did not converge.
class OracleFailure : public Error {
public:
    using Error::Error;
};

}  // namespace wgqed
