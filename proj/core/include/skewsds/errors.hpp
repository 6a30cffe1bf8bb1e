#pragma once

#include <stdexcept>
#include <string>

namespace skewsds {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Declared sizes or moduli disagree with the data they describe.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Parameters violate k < (v-1)/2 = r; callers must complement B first.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

class InvalidGroupElement : public Error {
 public:
  using Error::Error;
};

// Two SDS pairs with different (v, r, k, lambda) cannot be compared.
class IncomparableError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Parse failures and matrices with entries outside {+1, -1}.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace skewsds
