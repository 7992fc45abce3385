#pragma once

#include <stdexcept>
#include <string>

namespace bcap {

// Base of every error raised by the library. The CLI maps all of these to
// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A derived mode frequency is zero or negative.
class PositivityError : public Error {
 public:
  using Error::Error;
};

class NoSignChange : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

// A truncated photon-number ladder misses more probability mass than allowed.
class TruncationError : public Error {
 public:
  using Error::Error;
};

}  // namespace bcap
