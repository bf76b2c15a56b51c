#pragma once

#include <stdexcept>
#include <string>

namespace pcz {

// Bad user input: malformed config, out-of-range parameter, exhausted sequence.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke an operation's precondition (length mismatch, unknown ball).
class LogicError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A structural invariant of the ball partition failed at runtime.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcz
