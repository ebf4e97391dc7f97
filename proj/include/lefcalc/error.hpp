#pragma once

#include <stdexcept>
#include <string>

namespace lefcalc {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad user data: malformed documents, violated preconditions.
class InputError : public Error {
  public:
    using Error::Error;
};

class SurfaceMismatch : public InputError {
  public:
    SurfaceMismatch() : InputError("curve classes live on different surfaces") {}
};

// A requested linear system has no solution (c1 != 0, parity obstruction, ...).
class NotSolvable : public Error {
  public:
    using Error::Error;
};

// The library broke one of its own guarantees.
class IntegrityError : public Error {
  public:
    using Error::Error;
};

}  // namespace lefcalc
