#include "natanzon/potential.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

double evaluate(const NatanzonParams& p, double z, double w) {
  if (z <= 0.5) return natanzon_potential(p, z, w);
  // Near z = 1 the numerator and R are expanded in w to keep the
  // (h1 + 1)/c1 limit exact.
  const double numerator = (p.h1 + 1.0) + (p.h0 - p.h1 - p.f) * w + p.f * w * w;
  const double r_poly = p.c1 - (2.0 * p.a + p.tau) * w + p.a * w * w;
  const double zw = z * w;
  const double r2 = r_poly * r_poly;
  return numerator / r_poly + p.a * zw * zw / r2 - (p.a + (p.c1 - p.c0) * (z - w)) * zw / r2 -
         1.25 * p.delta_disc * zw * zw / (r2 * r_poly);
}

}  // namespace

PotentialInstance::PotentialInstance(const NatanzonParams& params, const MappingOptions& options)
    : params_(params), mapping_(params, options) {
  if (params_.domain_kind() == DomainKind::half_line) origin_series_ = fit_origin_series();
}

double PotentialInstance::v_of_z(double z) const {
  if (!(z > 0.0 && z < 1.0)) throw DomainError(fmt::format("V(z) needs 0 < z < 1, got {}", z));
  return evaluate(params_, z, 1.0 - z);
}

double PotentialInstance::v_of_point(const MappedPoint& pt) const {
  if (pt.w == 0.0) return asymptotic_value();
  if (pt.z == 0.0) throw DomainError("V diverges at the z = 0 end");
  return evaluate(params_, pt.z, pt.w);
}

double PotentialInstance::v_of_r(double r) const { return v_of_point(mapping_.point_at(r)); }

double PotentialInstance::limit_z_times_v_at_zero() const {
  const auto& p = params_;
  if (p.c0 > 0.0) return 0.0;
  // R ~ tau z: z V -> (h0 + 1)/tau + (tau - (5/4) tau)/tau^2 = (h0 + 3/4)/tau.
  if (p.tau > 0.0) return (p.h0 + 0.75) / p.tau;
  return std::numeric_limits<double>::infinity();
}

std::array<double, 4> PotentialInstance::fit_origin_series() const {
  // r^2 V = C + c1 r + c2 r^2 + ... ; least-squares cubic over [1e-4, 1e-2].
  constexpr int kSamples = 24;
  Eigen::MatrixXd design(kSamples, 4);
  Eigen::VectorXd rhs(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    const double r = std::pow(10.0, -4.0 + 2.0 * i / (kSamples - 1));
    const double s = r / 1e-2;
    design(i, 0) = 1.0;
    design(i, 1) = s;
    design(i, 2) = s * s;
    design(i, 3) = s * s * s;
    rhs(i) = r * r * v_of_r(r);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  return {coef(0), coef(1) / 1e-2, coef(2) / 1e-4, coef(3) / 1e-6};
}

}  // namespace natanzon
