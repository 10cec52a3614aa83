#pragma once

#include <stdexcept>
#include <string>

namespace latrw {

// Root of the library's error hierarchy. Every failure that is part of an
// operation's contract derives from this.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotLowerTriangular : public Error {
  public:
    using Error::Error;
};

class NonPositiveDiagonal : public Error {
  public:
    using Error::Error;
};

// M divided by a diagonal entry is not an integer. `axis` is 0-based.
class NonIntegerRadix : public Error {
  public:
    NonIntegerRadix(int axis, const std::string& msg) : Error(msg), axis(axis) {}
    int axis;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class NotALatticePoint : public Error {
  public:
    using Error::Error;
};

class OutOfCube : public Error {
  public:
    using Error::Error;
};

class RangeViolation : public Error {
  public:
    using Error::Error;
};

// The target block is truncated by the cube boundary and the encoded point
// fell into the cut-off part: it exists in the untruncated block but cannot
// be stored.
class PhantomCodeword : public Error {
  public:
    using Error::Error;
};

class MemoryFull : public Error {
  public:
    using Error::Error;
};

class TooLarge : public Error {
  public:
    using Error::Error;
};

class InsufficientData : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace latrw
