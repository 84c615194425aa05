#pragma once

#include <stdexcept>
#include <string>

namespace maxdiv {

/// Argument outside the set on which a function is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact integer result does not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Input is valid in form but degenerate for the requested computation
/// (parallel or concurrent chords, zero variance, ...).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested method is not available for the given parameters.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace maxdiv
