#pragma once

#include <stdexcept>
#include <string>

namespace fhtp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: index out of range, negative rate, malformed model.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Scenario document could not be turned into a valid model.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or brute-force search would exceed its size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A transmitter whose power set is {0}; it can never deliver data.
class DegenerateTransmitterError : public Error {
 public:
  DegenerateTransmitterError(const std::string& what, std::size_t pair)
      : Error(what), pair_(pair) {}
  std::size_t pair() const noexcept { return pair_; }

 private:
  std::size_t pair_;
};

/// The queue can provably never be cleared.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// The search exceeded its hard depth cap without reaching the goal.
class GuardExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace fhtp
