#ifndef TRIDENT_ERRORS_HPP
#define TRIDENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trident {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A quotient denominator (or negative power base) vanished during evaluation.
class DivisionByZero : public Error
{
public:
  using Error::Error;
};

/// Two objects living in different coordinate charts were combined.
class ChartMismatch : public Error
{
public:
  using Error::Error;
};

/// The mechanism frame is undefined (leg length l2 or L = l1 + l3 + 2 near zero).
class SingularConfiguration : public Error
{
public:
  using Error::Error;
};

/// The bracket-generated distribution does not reach dimension 7.
class DegenerateGrowth : public Error
{
public:
  using Error::Error;
};

class ZeroCombination : public Error
{
public:
  using Error::Error;
};

class ZeroHorizontalMomentum : public Error
{
public:
  using Error::Error;
};

/// Precondition breach on a user-supplied argument (dt <= 0, bad index, ...).
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

}  // namespace trident

#endif  // TRIDENT_ERRORS_HPP
