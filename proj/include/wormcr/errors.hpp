#pragma once

#include <stdexcept>
#include <string>

namespace wormcr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// A denominator or inner log argument left the declared chart of a germ.
class OutsideChart : public Error {
public:
    using Error::Error;
};

/// Continuity-tracked log jumped by more than the allowed amount between samples.
class BranchAmbiguity : public Error {
public:
    using Error::Error;
};

class EmptyStratum : public Error {
public:
    using Error::Error;
};

class NotSmoothPoint : public Error {
public:
    using Error::Error;
};

/// Finite-difference error estimate exceeded its threshold.
class IllConditioned : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Parameter chart of the desingularization hit its center z^i = 1.
class DesingularizationCenter : public Error {
public:
    using Error::Error;
};

/// Every sample of a sweep was skipped.
class EmptyVerification : public Error {
public:
    using Error::Error;
};

}  // namespace wormcr
