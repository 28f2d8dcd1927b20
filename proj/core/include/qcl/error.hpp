#pragma once

#include <stdexcept>
#include <string>

namespace qcl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: non-Hermitian matrices, zero couplings,
/// mismatched control horizons, unparsable files.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The input is well formed but lies outside the regime an operation is
/// defined for (non-planar problem vectors, wrong domain for a saddle probe,
/// problems that do not admit the canonical reduced form).
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

}  // namespace qcl
