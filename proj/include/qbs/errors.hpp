#pragma once

#include <stdexcept>
#include <string>

namespace qbs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (non-positive
/// spectrum, t <= 0, repeated eigenvalue, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A typed matrix failed its construction check. `defect()` is the measured
/// violation (e.g. ||M - M*||_F for Hermiticity).
class InvariantError : public Error {
 public:
  InvariantError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbs
