#pragma once

#include <vector>

#include "natanzon/params.hpp"

namespace natanzon {

struct MappingOptions {
  /// Table nodes, uniformly spaced in the logit variable x = ln(z/(1-z)).
  int table_nodes = 2049;
  /// Table covers x in [-logit_extent, logit_extent].
  double logit_extent = 40.0;
};

/// One point of the mapping. z and w = 1 - z are carried separately so that
/// the approach to z = 1 keeps full relative precision in w.
struct MappedPoint {
  double r;
  double z;
  double w;
  /// ln(z / (1 - z))
  double x;
};

/// The solved change of variable dz/dr = 2 z (1 - z) / sqrt(R(z)), with
/// z -> 1 as r -> inf.
///
/// Anchors: r = 0 at z = 0 on the half line (c0 = 0), r = 0 at z = 1/2 on the
/// full line (c0 > 0). Near the endpoints the integrand behaves like
/// sqrt(c0)/(2z), sqrt(tau)/(2 sqrt(z)) and sqrt(c1)/(2(1-z)); those pieces are
/// integrated in closed form and only a smooth remainder goes through
/// quadrature.
///
/// Immutable after construction.
class ChangeOfVariable {
 public:
  explicit ChangeOfVariable(const NatanzonParams& params, const MappingOptions& options = {});

  const NatanzonParams& params() const { return params_; }
  DomainKind domain_kind() const { return params_.domain_kind(); }

  /// r assigned to the anchor z-value.
  double r_origin() const { return 0.0; }
  double anchor_z() const { return domain_kind() == DomainKind::half_line ? 0.0 : 0.5; }
  /// Lower end of the r-domain: 0 or -inf.
  double domain_min() const;

  /// dr/dz = sqrt(R) / (2 z (1 - z)), for 0 < z < 1.
  double dr_dz(double z) const;
  double r_of_z(double z) const;
  double r_of_logit(double x) const;

  double z_of_r(double r) const { return point_at(r).z; }
  MappedPoint point_at(double r) const;
  MappedPoint point_at_logit(double x) const;

  /// dz/dr = 2 z w / sqrt(R) at a mapped point.
  double dz_dr(const MappedPoint& point) const;

  /// R evaluated in whichever of z or 1 - z keeps precision.
  double r_poly_at(const MappedPoint& point) const;

  std::size_t table_size() const { return x_nodes_.size(); }

 private:
  double singular_part(double x) const;
  double smooth_part(double x) const;
  double integration_variable(double x) const;
  double integrate_remainder(double from, double to) const;
  double remainder_integrand(double t) const;

  NatanzonParams params_;
  MappingOptions options_;
  double sqrt_c0_;
  double sqrt_c1_;
  double dx_;
  std::vector<double> x_nodes_;
  std::vector<double> var_nodes_;
  std::vector<double> remainder_nodes_;
  std::vector<double> r_nodes_;
};

/// Numerically stable softplus, ln(1 + e^x).
double softplus(double x);

}  // namespace natanzon
