#ifndef ENDATLAS_ERROR_HPP
#define ENDATLAS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace endatlas {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inadmissible input (CLI exit status 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured search or enumeration cap was exceeded (CLI exit status 3).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that must always hold was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace endatlas

#endif  // ENDATLAS_ERROR_HPP
