#pragma once

#include <stdexcept>
#include <string>

namespace conefaces {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input (ragged rows, negative entries, ...).
class InputError : public Error {
public:
  using Error::Error;
};

// The operation needs an exact (rational) eigenvalue and did not get one.
class UnsupportedModeError : public Error {
public:
  using Error::Error;
};

// A lattice or enumeration outgrew the configured cap.
class CapExceededError : public Error {
public:
  using Error::Error;
};

// A theorem-backed post-condition failed; indicates a library bug.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace conefaces
