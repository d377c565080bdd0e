#pragma once

#include <stdexcept>
#include <string>

namespace permuframe {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad permutation, non inverse-closed
// generating set, length mismatch, unreadable file.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numerical invariant that must hold did not (non-convergence,
// rank-deficient atom set, eigen-residual out of tolerance).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace permuframe
