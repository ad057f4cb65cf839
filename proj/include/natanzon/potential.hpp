#pragma once

#include <array>
#include <optional>

#include "natanzon/mapping.hpp"
#include "natanzon/params.hpp"

namespace natanzon {

/// Natanzon potential V(z) with w = 1 - z supplied separately.
///
///   V = [f z^2 - (h0 - h1 + f) z + h0 + 1] / R
///     + (a + [a + (c1 - c0)(2z - 1)] / (z (z - 1)) - (5/4) Delta / R) z^2 (1 - z)^2 / R^2
///
/// The second term is expanded so that no 0/0 appears as z -> 0 or z -> 1.
template <class T>
T natanzon_potential(const NatanzonParams& p, const T& z, const T& w) {
  const T r_poly = (p.a * z + p.tau) * z + p.c0;
  const T numerator = (p.f * z - (p.h0 - p.h1 + p.f)) * z + (p.h0 + 1.0);
  const T zw = z * w;
  const T r2 = r_poly * r_poly;
  return numerator / r_poly + p.a * zw * zw / r2 - (p.a + (p.c1 - p.c0) * (z - w)) * zw / r2 -
         1.25 * p.delta_disc * zw * zw / (r2 * r_poly);
}

/// Potential evaluation for one parameter set, in z and in r.
class PotentialInstance {
 public:
  explicit PotentialInstance(const NatanzonParams& params, const MappingOptions& options = {});

  const NatanzonParams& params() const { return params_; }
  const ChangeOfVariable& mapping() const { return mapping_; }

  /// (h1 + 1) / c1, the limit of V as r -> inf.
  double asymptotic_value() const { return params_.threshold(); }

  /// V(z) for 0 < z < 1; endpoints go through the limit helpers.
  double v_of_z(double z) const;
  double v_of_point(const MappedPoint& point) const;
  double v_of_r(double r) const;

  /// Limit of V as z -> 1.
  double limit_at_one() const { return asymptotic_value(); }
  /// Limit of z V(z) as z -> 0 (the 1/z strength at the z = 0 end).
  double limit_z_times_v_at_zero() const;

  /// lim r^2 V(r) as r -> 0+ on the half line, fitted numerically; nullopt on
  /// the full line.
  std::optional<double> origin_coefficient() const {
    return origin_series_ ? std::optional<double>((*origin_series_)[0]) : std::nullopt;
  }
  /// Fitted r^2 V = s0 + s1 r + s2 r^2 + s3 r^3 near the origin (half line).
  const std::optional<std::array<double, 4>>& origin_series() const { return origin_series_; }

 private:
  std::array<double, 4> fit_origin_series() const;

  NatanzonParams params_;
  ChangeOfVariable mapping_;
  std::optional<std::array<double, 4>> origin_series_;
};

}  // namespace natanzon
