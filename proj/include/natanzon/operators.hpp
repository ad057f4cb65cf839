#pragma once

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "natanzon/mapping.hpp"
#include "natanzon/params.hpp"
#include "natanzon/potential.hpp"
#include "natanzon/taylor.hpp"

namespace natanzon {

using cplx = std::complex<double>;
using JetC = Jet<cplx, 8>;

enum class Generator {
  j0,
  j_plus,
  j_minus,
  casimir,
  j0_inf,
  j_plus_inf,
  j_minus_inf,
  casimir_inf,
  l_z,
  p_plus,
  p_minus,
  p_squared,
  p_plus_inf,
  p_minus_inf,
  p_squared_inf,
  /// E - H = d^2/dr^2 + E - V
  energy_gap,
  /// G (E - H) with G the second-derivative coefficient of the Casimir.
  scaled_energy_gap,
};

std::string_view to_string(Generator g);

/// Derivatives of z(r) expressed through z, from dz/dr = phi(z) =
/// 2 z (1 - z) / sqrt(R(z)) and the chain rule.
template <class T>
struct MappingDerivatives {
  T z1;
  T z2;
  T z3;
};

template <class T>
MappingDerivatives<T> mapping_derivatives(const NatanzonParams& p, const T& z) {
  const T r_poly = (p.a * z + p.tau) * z + p.c0;
  const T r_prime = 2.0 * p.a * z + p.tau;
  const T inv_sqrt = 1.0 / sqrt(r_poly);
  const T inv_r = 1.0 / r_poly;
  const T poly = z - z * z;
  const T poly_prime = 1.0 - 2.0 * z;
  const T phi = 2.0 * poly * inv_sqrt;
  const T phi1 = (2.0 * poly_prime - poly * r_prime * inv_r) * inv_sqrt;
  const T phi2 = (-4.0 - 2.0 * poly_prime * r_prime * inv_r - 2.0 * p.a * poly * inv_r +
                  1.5 * poly * r_prime * r_prime * inv_r * inv_r) *
                 inv_sqrt;
  return {phi, phi1 * phi, (phi2 * phi + phi1 * phi1) * phi};
}

/// A second-order differential operator on radial functions at fixed
/// azimuthal weight, f -> c2 f'' + c1 f' + c0 f, raising the weight by
/// shift(). The angular part is reduced: d/dphi -> i m, e^{+-i phi} -> shift.
class ReducedOperator {
 public:
  ReducedOperator(Generator generator, const NatanzonParams& params, double p = 0.0, double energy = 0.0);

  Generator generator() const { return generator_; }
  const NatanzonParams& params() const { return params_; }
  int shift() const;
  bool needs_mapping() const;

  /// {c2, c1, c0} at source weight m. T is cplx or a jet in r.
  template <class T>
  std::array<T, 3> coefficients(const T& z, const T& r, double m) const;

 private:
  Generator generator_;
  NatanzonParams params_;
  double p_;
  double energy_;
};

/// Gaussian times a quadratic, or a plane wave e^{i sigma k r}.
struct TestFunction {
  enum class Kind { gaussian, plane_wave };
  Kind kind = Kind::gaussian;
  double center = 0.0;
  double width = 1.0;
  std::array<cplx, 3> poly{1.0, 0.0, 0.0};
  /// sigma k for plane waves
  double wave_number = 0.0;

  template <class T>
  T operator()(const T& r) const {
    if (kind == Kind::plane_wave) return exp(T(cplx(0.0, wave_number)) * r);
    const T s = r - center;
    return exp(-0.5 * s * s / (width * width)) * (poly[0] + s * (poly[1] + s * poly[2]));
  }
};

/// Five Gaussian test functions on the window [0.5, 5] sqrt(c1), decaying to
/// below 1e-17 at its edges.
std::vector<TestFunction> standard_test_functions(double sqrt_c1);

/// n equispaced points on [lo, hi), treated as periodic.
struct PeriodicGrid {
  double lo = 0.0;
  double hi = 1.0;
  int points = 256;

  double r(int i) const { return lo + (hi - lo) * i / points; }
};

/// Window [0.5, 5] sqrt(c1) with the given resolution.
PeriodicGrid standard_window(const NatanzonParams& params, int points = 256);

/// Fourier differentiation on a periodic grid (FFTW plans owned here).
class SpectralDifferentiator {
 public:
  SpectralDifferentiator(int points, double length);
  ~SpectralDifferentiator();
  SpectralDifferentiator(const SpectralDifferentiator&) = delete;
  SpectralDifferentiator& operator=(const SpectralDifferentiator&) = delete;

  std::vector<cplx> derivative(std::span<const cplx> f, int order) const;

 private:
  struct Plans;
  std::unique_ptr<Plans> plans_;
  int points_;
  double length_;
};

/// Applies reduced operators to grid samples with spectral derivatives.
class SpectralBackend {
 public:
  using Value = cplx;
  using Function = std::vector<cplx>;

  /// `mapping` may be null when only polar (e(2)) operators are applied.
  SpectralBackend(const PeriodicGrid& grid, const ChangeOfVariable* mapping);

  const PeriodicGrid& grid() const { return grid_; }
  Function sample(const TestFunction& fn) const;
  Function apply(const ReducedOperator& op, const Function& f, double m) const;

 private:
  PeriodicGrid grid_;
  SpectralDifferentiator diff_;
  std::vector<double> r_;
  std::vector<double> z_;
  std::vector<double> w_;
};

/// Applies reduced operators to Taylor jets at a set of points; derivatives
/// are exact to rounding. z(r0 + t) comes from Picard iteration of the
/// mapping ODE.
class JetBackend {
 public:
  using Value = JetC;
  using Function = std::vector<JetC>;

  JetBackend(std::vector<double> points, const ChangeOfVariable* mapping);

  std::span<const double> points() const { return points_; }
  Function sample(const TestFunction& fn) const;
  Function apply(const ReducedOperator& op, const Function& f, double m) const;

 private:
  std::vector<double> points_;
  std::vector<JetC> r_;
  std::vector<JetC> z_;
};

inline cplx value_of(const cplx& v) { return v; }
inline cplx value_of(const JetC& v) { return v.value(); }

/// a * sa + b * sb, pointwise.
template <class V>
std::vector<V> combine(const std::vector<V>& a, cplx sa, const std::vector<V>& b, cplx sb) {
  std::vector<V> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = V(sa) * a[i] + V(sb) * b[i];
  return out;
}

template <class V>
double sup_norm(const std::vector<V>& f) {
  double s = 0.0;
  for (const auto& v : f) s = std::max(s, std::abs(value_of(v)));
  return s;
}

// ---------------------------------------------------------------------------

template <class T>
std::array<T, 3> ReducedOperator::coefficients(const T& z, const T& r, double m) const {
  const auto& pr = params_;
  const double p = p_;
  const T zero(0.0);
  const cplx i_unit(0.0, 1.0);
  const double half_sqrt_c1 = 0.5 * std::sqrt(pr.c1);

  switch (generator_) {
    case Generator::j0:
    case Generator::j0_inf:
    case Generator::l_z:
      return {zero, zero, T(m)};

    case Generator::j_plus:
    case Generator::j_minus: {
      const double sign = generator_ == Generator::j_plus ? 1.0 : -1.0;
      const auto d = mapping_derivatives(pr, z);
      const T root = sqrt(z);
      const T c1 = sign * root * (z - 1.0) / d.z1;
      const T c0 = 0.5 * m * (z + 1.0) / root -
                   sign * 0.5 * (z - 1.0) * ((1.0 - sign * p) / root - d.z2 * root / (d.z1 * d.z1));
      return {zero, c1, c0};
    }

    case Generator::casimir: {
      const auto d = mapping_derivatives(pr, z);
      const T zm1 = z - 1.0;
      const T z1_sq = d.z1 * d.z1;
      const T z1_4 = z1_sq * z1_sq;
      const T c2 = z * zm1 * zm1 / z1_sq;
      const T bracket = z * z * (2.0 * d.z3 * d.z1 - 3.0 * d.z2 * d.z2) - z1_4 * (p * p - 1.0);
      const T c0 = -m * m * zm1 * zm1 / (4.0 * z) - 0.5 * p * m * (z * z - 1.0) / z +
                   0.25 * zm1 * zm1 * bracket / (z * z1_4);
      return {c2, zero, c0};
    }

    case Generator::j_plus_inf:
      return {zero, T(-half_sqrt_c1), T(m + 0.5)};
    case Generator::j_minus_inf:
      return {zero, T(half_sqrt_c1), T(m - 0.5)};
    case Generator::casimir_inf:
      return {T(0.25 * pr.c1), zero, T(-0.25)};

    case Generator::p_plus:
    case Generator::p_minus: {
      const double sign = generator_ == Generator::p_plus ? 1.0 : -1.0;
      return {zero, T(-i_unit), T(-i_unit * (-sign * m - 0.5)) / r};
    }
    case Generator::p_squared:
      return {T(-1.0), zero, T(m * m - 0.25) / (r * r)};
    case Generator::p_plus_inf:
    case Generator::p_minus_inf:
      return {zero, T(-i_unit), zero};
    case Generator::p_squared_inf:
      return {T(-1.0), zero, zero};

    case Generator::energy_gap:
    case Generator::scaled_energy_gap: {
      const T gap = energy_ - natanzon_potential(pr, z, T(1.0) - z);
      if (generator_ == Generator::energy_gap) return {T(1.0), zero, gap};
      const auto d = mapping_derivatives(pr, z);
      const T g = z * (z - 1.0) * (z - 1.0) / (d.z1 * d.z1);
      return {g, zero, g * gap};
    }
  }
  return {zero, zero, zero};
}

}  // namespace natanzon
