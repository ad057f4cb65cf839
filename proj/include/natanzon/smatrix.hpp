#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "natanzon/params.hpp"

namespace natanzon {

/// Coefficients of the ladder operator expanded in the asymptotic Euclidean
/// generators: gamma_plus = gamma_minus = 0 and f(k) = k sqrt(c1) / 2.
struct ExpansionCoefficients {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double sqrt_c1 = 1.0;

  double f_of_k(double k) const { return 0.5 * k * sqrt_c1; }
};

ExpansionCoefficients expansion_coefficients(const NatanzonParams& params);

/// Unit-modulus factor multiplying the gamma ratio. Not determined by the
/// algebra; defaults to 1.
using DeltaFactor = std::function<std::complex<double>(double k)>;

struct SMatrixPoint {
  double k = 0.0;
  /// Weight used; imaginary part non-zero only for a complex physical weight.
  std::complex<double> m;
  std::complex<double> value;
  /// arg S, continuous along a grid.
  double phase = 0.0;
};

/// Gamma(m + 1/2 - i f) / Gamma(m + 1/2 + i f) for complex m and f, with its
/// continuous log. Throws PoleError if either argument hits a pole.
std::complex<double> log_gamma_ratio(std::complex<double> m, std::complex<double> f);

/// S_m(k) = Gamma(m + 1/2 - i f) / Gamma(m + 1/2 + i f) * Delta(k) at fixed
/// real m.
SMatrixPoint s_fixed_m(const ExpansionCoefficients& coeffs, double m, double k, const DeltaFactor& delta = {});

struct PhysicalWeight {
  std::complex<double> value;
  /// True when a radicand is negative at E = k^2 and the principal root was
  /// taken.
  bool is_complex = false;
};

/// m(k) = (alpha(k^2) - beta(k^2)) / 2 with principal square roots.
PhysicalWeight physical_weight(const NatanzonParams& params, double k);

/// alpha(-kappa^2) - beta(-kappa^2) - kappa sqrt(c1) - (2n + 1). Throws
/// DomainError if a radicand is negative.
double bound_pole_residual(const NatanzonParams& params, double kappa, int n);

struct Pole {
  int n = 0;
  double kappa = 0.0;
  double E = 0.0;
};

/// Roots in kappa > 0 of bound_pole_residual for n = 0..n_max.
std::vector<Pole> find_poles(const NatanzonParams& params, int n_max);

struct WeightMode {
  enum class Kind { fixed, physical };
  Kind kind = Kind::physical;
  double m = 0.0;

  static WeightMode fixed(double m) { return {Kind::fixed, m}; }
  static WeightMode physical() { return {Kind::physical, 0.0}; }
};

struct PhaseGrid {
  std::vector<SMatrixPoint> points;
  std::vector<std::string> warnings;
};

/// S over an increasing k grid with the phase unwrapped point to point.
/// Warns when a gamma argument comes within 1e-6 of a pole or when the
/// physical weight turns complex.
PhaseGrid phase_shift_grid(const NatanzonParams& params, std::span<const double> k_grid, const WeightMode& mode,
                           const DeltaFactor& delta = {});

}  // namespace natanzon
