#pragma once

#include <stdexcept>

namespace zseries {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A summation hit its configured caps before meeting tolerance, or the
// final certified bound exceeds the requested tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

// Consecutive same-sign terms found past the declared monotonicity onset.
struct InvalidSequence : Error {
  using Error::Error;
};

// Two supposedly-equivalent evaluation routes disagree beyond their
// combined error bounds.
struct CrossCheckMismatch : Error {
  using Error::Error;
};

// Euler-Maclaurin reference evaluation requested at its pole s = 1.
struct PolePassed : Error {
  using Error::Error;
};

}  // namespace zseries
