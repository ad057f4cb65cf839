#pragma once

#include <string>
#include <vector>

namespace natanzon {

enum class DomainKind { half_line, full_line };
enum class ValidationMode { bound, scattering };

/// The six free parameters of a Natanzon potential, as supplied by a user.
struct RawParams {
  double f = 0.0;
  double h0 = 0.0;
  double h1 = 0.0;
  double a = 0.0;
  double c0 = 0.0;
  double c1 = 1.0;
};

/// A potential instance: the free parameters plus the quantities derived from
/// them. Units are hbar = 2m = 1, so energies are 1/length^2.
///
/// Construct through derive() so that tau and delta_disc are consistent.
struct NatanzonParams {
  double f = 0.0;
  double h0 = 0.0;
  double h1 = 0.0;
  double a = 0.0;
  double c0 = 0.0;
  double c1 = 1.0;
  /// c1 - c0 - a
  double tau = 1.0;
  /// tau^2 - 4 a c0
  double delta_disc = 1.0;

  RawParams raw() const { return {f, h0, h1, a, c0, c1}; }

  /// c0 == 0 maps onto r in [0, inf); c0 > 0 onto the whole real line.
  DomainKind domain_kind() const { return c0 == 0.0 ? DomainKind::half_line : DomainKind::full_line; }

  /// Limit of V(r) as r -> inf, (h1 + 1)/c1.
  double threshold() const { return (h1 + 1.0) / c1; }

  friend bool operator==(const NatanzonParams&, const NatanzonParams&) = default;
};

NatanzonParams derive(const RawParams& raw);
NatanzonParams derive(double f, double h0, double h1, double a, double c0, double c1);

struct ValidityReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

/// Checks the reality and positivity conditions. Never throws; every violated
/// constraint is listed in the report.
ValidityReport validate(const NatanzonParams& params, ValidationMode mode);

/// Minimum of R over the open interval (0, 1), from the exact vertex formula.
/// Returns the infimum, which may be attained only at an endpoint.
double r_poly_infimum(const NatanzonParams& params);

/// R(z) = a z^2 + tau z + c0 for z in [0, 1]; throws DomainError otherwise.
double r_poly(const NatanzonParams& params, double z);

/// R without the domain check, generic over the scalar type.
template <class T>
T r_poly_unchecked(const NatanzonParams& p, const T& z) {
  return (p.a * z + p.tau) * z + p.c0;
}

const char* to_string(DomainKind kind);
const char* to_string(ValidationMode mode);

}  // namespace natanzon
