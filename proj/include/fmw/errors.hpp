#pragma once

#include <stdexcept>
#include <string>

namespace fmw {

/// Malformed or out-of-range input (bad dimensions, indices, parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Work would exceed a configured resource cap (dense Fock space size).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A floating-point consistency check inside an algorithm failed.
class NumericalConsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The covariance matrix does not satisfy M^2 = -lambda0^2 within tolerance.
class NotIsotropic : public NumericalConsistency {
 public:
  NotIsotropic(const std::string& what, double deviation)
      : NumericalConsistency(what), deviation_(deviation) {}

  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

}  // namespace fmw
