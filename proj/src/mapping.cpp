#include "natanzon/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "natanzon/errors.hpp"
#include "natanzon/roots.hpp"

namespace natanzon {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
// Logit beyond which z underflows; the root search never goes further.
constexpr double kLogitFloor = -1400.0;

double z_of_logit(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double w_of_logit(double x) { return 1.0 / (1.0 + std::exp(x)); }

}  // namespace

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

ChangeOfVariable::ChangeOfVariable(const NatanzonParams& params, const MappingOptions& options)
    : params_(params),
      options_(options),
      sqrt_c0_(std::sqrt(std::max(params.c0, 0.0))),
      sqrt_c1_(std::sqrt(params.c1)) {
  if (!validate(params, ValidationMode::bound))
    throw DomainError("change of variable needs c1 > 0, c0 >= 0 and R > 0 on (0, 1)");
  if (options.table_nodes < 3) throw DomainError("mapping table needs at least 3 nodes");

  const int n = options.table_nodes % 2 == 1 ? options.table_nodes : options.table_nodes + 1;
  const double extent = options.logit_extent;
  dx_ = 2.0 * extent / (n - 1);
  x_nodes_.resize(static_cast<std::size_t>(n));
  var_nodes_.resize(x_nodes_.size());
  remainder_nodes_.assign(x_nodes_.size(), 0.0);
  r_nodes_.resize(x_nodes_.size());
  for (std::size_t k = 0; k < x_nodes_.size(); ++k) {
    x_nodes_[k] = -extent + dx_ * static_cast<double>(k);
    var_nodes_[k] = integration_variable(x_nodes_[k]);
  }
  const std::size_t mid = x_nodes_.size() / 2;
  x_nodes_[mid] = 0.0;
  var_nodes_[mid] = integration_variable(0.0);

  if (domain_kind() == DomainKind::full_line) {
    // Smooth remainder accumulated outward from z = 1/2.
    for (std::size_t k = mid + 1; k < x_nodes_.size(); ++k)
      remainder_nodes_[k] = remainder_nodes_[k - 1] + integrate_remainder(var_nodes_[k - 1], var_nodes_[k]);
    for (std::size_t k = mid; k-- > 0;)
      remainder_nodes_[k] = remainder_nodes_[k + 1] + integrate_remainder(var_nodes_[k + 1], var_nodes_[k]);
  } else {
    // Accumulated from u = 0.
    remainder_nodes_[0] = integrate_remainder(0.0, var_nodes_[0]);
    for (std::size_t k = 1; k < x_nodes_.size(); ++k)
      remainder_nodes_[k] = remainder_nodes_[k - 1] + integrate_remainder(var_nodes_[k - 1], var_nodes_[k]);
  }
  for (std::size_t k = 0; k < x_nodes_.size(); ++k) r_nodes_[k] = singular_part(x_nodes_[k]) + remainder_nodes_[k];
}

double ChangeOfVariable::domain_min() const {
  return domain_kind() == DomainKind::half_line ? 0.0 : -std::numeric_limits<double>::infinity();
}

// z on the full line, u = sqrt(z) on the half line.
double ChangeOfVariable::integration_variable(double x) const {
  if (domain_kind() == DomainKind::full_line) return z_of_logit(x);
  return std::exp(-0.5 * softplus(-x));
}

double ChangeOfVariable::remainder_integrand(double t) const {
  const auto& p = params_;
  if (domain_kind() == DomainKind::full_line) {
    const double sqrt_r = std::sqrt(r_poly_unchecked(p, t));
    return (p.a * t + p.tau) / (2.0 * (sqrt_r + sqrt_c0_)) - (p.a * (t + 1.0) + p.tau) / (2.0 * (sqrt_r + sqrt_c1_));
  }
  // t = u = sqrt(z); R = u^2 (a u^2 + tau).
  const double inner = std::sqrt(std::max(p.a * t * t + p.tau, 0.0));
  return inner - t * (p.a * (t * t + 1.0) + p.tau) / (t * inner + sqrt_c1_);
}

double ChangeOfVariable::integrate_remainder(double from, double to) const {
  if (from == to) return 0.0;
  auto f = [this](double t) { return remainder_integrand(t); };
  // Segments never exceed one logit step, over which the remainder is smooth
  // enough for a fixed rule to reach rounding level.
  return boost::math::quadrature::gauss<double, 20>::integrate(f, from, to);
}

double ChangeOfVariable::singular_part(double x) const {
  const double ln_w = -softplus(x);
  if (domain_kind() == DomainKind::full_line) {
    const double ln_z = -softplus(-x);
    return 0.5 * sqrt_c0_ * (kLn2 + ln_z) - 0.5 * sqrt_c1_ * (kLn2 + ln_w);
  }
  return -0.5 * sqrt_c1_ * ln_w;
}

double ChangeOfVariable::smooth_part(double x) const {
  const double pos = (x - x_nodes_.front()) / dx_;
  const auto last = static_cast<double>(x_nodes_.size() - 1);
  const auto k = static_cast<std::size_t>(std::clamp(std::round(pos), 0.0, last));
  return remainder_nodes_[k] + integrate_remainder(var_nodes_[k], integration_variable(x));
}

double ChangeOfVariable::r_of_logit(double x) const {
  if (std::isnan(x)) throw DomainError("r_of_logit: NaN argument");
  return singular_part(x) + smooth_part(x);
}

double ChangeOfVariable::dr_dz(double z) const {
  if (!(z > 0.0 && z < 1.0)) throw DomainError(fmt::format("dr/dz needs 0 < z < 1, got {}", z));
  return std::sqrt(r_poly_unchecked(params_, z)) / (2.0 * z * (1.0 - z));
}

double ChangeOfVariable::r_of_z(double z) const {
  if (!(z >= 0.0 && z < 1.0)) throw DomainError(fmt::format("r(z) needs 0 <= z < 1, got {}", z));
  if (z == 0.0) {
    if (domain_kind() == DomainKind::half_line) return 0.0;
    throw DomainError("r(z) diverges to -inf at z = 0 when c0 > 0");
  }
  return r_of_logit(std::log(z) - std::log1p(-z));
}

MappedPoint ChangeOfVariable::point_at_logit(double x) const {
  return {r_of_logit(x), z_of_logit(x), w_of_logit(x), x};
}

MappedPoint ChangeOfVariable::point_at(double r) const {
  if (std::isnan(r)) throw DomainError("z(r): NaN argument");
  if (domain_kind() == DomainKind::half_line) {
    if (r < 0.0) throw DomainError(fmt::format("z(r) on the half line needs r >= 0, got {}", r));
    if (r == 0.0) return {0.0, 0.0, 1.0, -std::numeric_limits<double>::infinity()};
  }
  auto residual = [&](double x) { return r_of_logit(x) - r; };

  roots::Bracket bracket{};
  if (r >= r_nodes_.front() && r <= r_nodes_.back()) {
    auto it = std::upper_bound(r_nodes_.begin(), r_nodes_.end(), r);
    std::size_t k = it == r_nodes_.end() ? r_nodes_.size() - 1 : static_cast<std::size_t>(it - r_nodes_.begin());
    k = std::max<std::size_t>(k, 1);
    bracket = {x_nodes_[k - 1], x_nodes_[k], r_nodes_[k - 1] - r, r_nodes_[k] - r};
  } else if (r > r_nodes_.back()) {
    // 1 - z ~ C exp(-2 r / sqrt(c1)) beyond the table.
    double hi = x_nodes_.back() + 2.0 * (r - r_nodes_.back()) / sqrt_c1_ + 1.0;
    double f_hi = residual(hi);
    for (double step = 2.0; f_hi < 0.0; step *= 2.0) f_hi = residual(hi += step);
    bracket = {x_nodes_.back(), hi, r_nodes_.back() - r, f_hi};
  } else {
    double lo = domain_kind() == DomainKind::full_line
                    ? x_nodes_.front() - 2.0 * (r_nodes_.front() - r) / sqrt_c0_ - 1.0
                    : x_nodes_.front() - 2.0;
    double f_lo = residual(lo);
    for (double step = 2.0; f_lo > 0.0 && lo > kLogitFloor; step *= 2.0) {
      lo = std::max(lo - step, kLogitFloor);
      f_lo = residual(lo);
    }
    if (f_lo > 0.0) return {r, 0.0, 1.0, kLogitFloor};
    bracket = {lo, x_nodes_.front(), f_lo, r_nodes_.front() - r};
  }
  const double x = roots::refine(residual, bracket);
  return {r, z_of_logit(x), w_of_logit(x), x};
}

double ChangeOfVariable::r_poly_at(const MappedPoint& pt) const {
  const auto& p = params_;
  if (pt.z <= 0.5) return r_poly_unchecked(p, pt.z);
  return p.c1 - (2.0 * p.a + p.tau) * pt.w + p.a * pt.w * pt.w;
}

double ChangeOfVariable::dz_dr(const MappedPoint& pt) const {
  return 2.0 * pt.z * pt.w / std::sqrt(r_poly_at(pt));
}

}  // namespace natanzon
