#pragma once

#include <stdexcept>
#include <string>

namespace genprob {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A requested cycle type or experiment configuration cannot be realised.
class InfeasibleConfig : public Error {
public:
    using Error::Error;
};

/// A computation would exceed a configured enumeration cap or recognition budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// The limiting probability is undefined at (x, x') = (0, inf) or (inf, 0).
class IndeterminateLimit : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

/// A/S distinction requested on fewer than 3 points.
class DegenerateDegree : public Error {
public:
    using Error::Error;
};

}  // namespace genprob
