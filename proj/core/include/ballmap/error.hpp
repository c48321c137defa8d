#ifndef BALLMAP_ERROR_HPP
#define BALLMAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ballmap
{

// Root of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error
{
public:
    using Error::Error;
};

// Parameter outside its admissible range (alpha >= 1, |zeta| >= 1, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

// A pivot fell below the relative threshold: the map is not locally
// biholomorphic at the evaluation point.
class SingularJacobian : public Error
{
public:
    using Error::Error;
};

// A fractional power was requested on (or continued across) the cut (-inf, 0].
class BranchCut : public Error
{
public:
    using Error::Error;
};

class NoConvergence : public Error
{
public:
    using Error::Error;
};

class NewtonDivergence : public NoConvergence
{
public:
    using NoConvergence::NoConvergence;
};

class QuadratureFailure : public Error
{
public:
    using Error::Error;
};

class ShapeViolation : public Error
{
public:
    using Error::Error;
};

class ZeroOfBase : public Error
{
public:
    using Error::Error;
};

class NotGStarlike : public Error
{
public:
    using Error::Error;
};

class UpperBoundsUndefined : public Error
{
public:
    using Error::Error;
};

class Unsupported : public Error
{
public:
    using Error::Error;
};

class NotBoundaryPoint : public Error
{
public:
    using Error::Error;
};

// Malformed JSON documents or configuration.
class ParseError : public Error
{
public:
    using Error::Error;
};

} // namespace ballmap

#endif
