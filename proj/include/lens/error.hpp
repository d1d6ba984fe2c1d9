#pragma once

#include <stdexcept>
#include <string>

namespace lens {

/// Raised when an input violates a precondition (corner point, coincident
/// arguments, parameter out of range, malformed problem file).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Neumann data that fails the compatibility condition. Carries |lhs - rhs|.
class SolvabilityError : public Error {
 public:
  SolvabilityError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

}  // namespace lens
