#pragma once

#include <stdexcept>
#include <string>

namespace natanzon {

/// An argument lies outside the domain where a quantity is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Log-gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, long pole) : DomainError(what), pole_(pole) {}
  long pole() const noexcept { return pole_; }

 private:
  long pole_;
};

/// A numerical procedure could not certify its result (multiple roots,
/// unconverged grids, asymptotic region not reached).
class NumericalDiagnostic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace natanzon
