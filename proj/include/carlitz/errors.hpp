#pragma once

#include <stdexcept>
#include <string>

namespace carlitz {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Division by an element that is zero to its precision.
struct IndeterminateValuationError : Error {
  using Error::Error;
};

// q_root applied to a series with a nonzero digit at an index not divisible
// by q; the caller must switch to the q-th-powered form of its identity.
struct QRootError : Error {
  using Error::Error;
};

struct ReduciblePolynomialError : Error {
  using Error::Error;
};

// Artin-Schreier solve with v(xi) < 0: outside the unramified model.
struct UnramifiedSolveError : Error {
  using Error::Error;
};

// Power-series evaluation outside its disk of convergence.
struct ConvergenceDiskError : Error {
  using Error::Error;
};

// Request needs l_n beyond the built n_max.
struct DepthExceededError : Error {
  using Error::Error;
};

struct BranchRangeError : Error {
  using Error::Error;
};

}  // namespace carlitz
