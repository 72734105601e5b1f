#ifndef HERGLOTZ_ERRORS_HPP
#define HERGLOTZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace herglotz {

// Every failure raised by the library derives from Error so callers can
// catch at one place; the subclasses let the CLI pick an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Truncation degree, factorial width, word count or basis size exceeded.
class DegreeLimit : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Series division by a series with (numerically) zero constant term.
class DivisionPole : public Error {
 public:
  using Error::Error;
};

// I - <z,T> is numerically singular.
class SingularPencil : public Error {
 public:
  using Error::Error;
};

class ResourceCap : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace herglotz

#endif  // HERGLOTZ_ERRORS_HPP
