#pragma once

#include <stdexcept>
#include <string>

namespace ofdmcr {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (precondition violation).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative method failed to reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed or contradictory experiment configuration.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ofdmcr
