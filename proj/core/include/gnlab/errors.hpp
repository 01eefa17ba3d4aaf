#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gnlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a map (e.g. lambda not in (0,B)).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IntegrabilityError : public Error {
 public:
  using Error::Error;
};

/// NaN (or infinity where forbidden) produced by an evaluated map.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class ExponentError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis is violated; `hypothesis()` names the first one.
class HypothesisError : public Error {
 public:
  HypothesisError(std::string hypothesis, const std::string& detail)
      : Error("hypothesis '" + hypothesis + "' violated: " + detail),
        hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

}  // namespace gnlab
