#include "natanzon/smatrix.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "natanzon/errors.hpp"
#include "natanzon/log_gamma.hpp"
#include "natanzon/roots.hpp"
#include "natanzon/spectrum.hpp"

namespace natanzon {

namespace {

constexpr double kPoleWarning = 1e-6;
constexpr double kKappaScanLimit = 1e3;

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

double unwrap(double phase, double previous) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return phase - two_pi * std::round((phase - previous) / two_pi);
}

}  // namespace

ExpansionCoefficients expansion_coefficients(const NatanzonParams& params) {
  return {0.0, 0.0, std::sqrt(params.c1)};
}

cplx log_gamma_ratio(cplx m, cplx f) {
  return log_gamma(m + 0.5 - kI * f) - log_gamma(m + 0.5 + kI * f);
}

SMatrixPoint s_fixed_m(const ExpansionCoefficients& coeffs, double m, double k, const DeltaFactor& delta) {
  if (!(k > 0.0)) throw DomainError(fmt::format("S-matrix needs k > 0, got {}", k));
  const cplx log_ratio = log_gamma_ratio(m, coeffs.f_of_k(k));
  const cplx d = delta ? delta(k) : cplx(1.0);
  return {k, m, std::exp(log_ratio) * d, log_ratio.imag() + std::arg(d)};
}

PhysicalWeight physical_weight(const NatanzonParams& p, double k) {
  const double E = k * k;
  const double ra = -p.a * E + p.f + 1.0;
  const double rb = -p.c0 * E + p.h0 + 1.0;
  const cplx alpha = std::sqrt(cplx(ra));
  const cplx beta = std::sqrt(cplx(rb));
  return {0.5 * (alpha - beta), ra < 0.0 || rb < 0.0};
}

double bound_pole_residual(const NatanzonParams& p, double kappa, int n) {
  const double E = -kappa * kappa;
  const double ra = -p.a * E + p.f + 1.0;
  const double rb = -p.c0 * E + p.h0 + 1.0;
  if (ra < 0.0) throw DomainError(fmt::format("alpha radicand -aE+f+1 = {} < 0 at kappa = {}", ra, kappa));
  if (rb < 0.0) throw DomainError(fmt::format("beta radicand -c0E+h0+1 = {} < 0 at kappa = {}", rb, kappa));
  return std::sqrt(ra) - std::sqrt(rb) - kappa * std::sqrt(p.c1) - (2.0 * n + 1.0);
}

std::vector<Pole> find_poles(const NatanzonParams& params, int n_max) {
  if (!validate(params, ValidationMode::scattering))
    throw DomainError("pole search needs scattering-valid parameters (h1 = -1)");
  const auto window = admissible_window(params);
  if (!(window.lower <= window.upper) || window.upper > 0.0) return {};
  const double kappa_lo = std::sqrt(-window.upper);
  const double kappa_hi = std::isfinite(window.lower) ? std::sqrt(-window.lower) : kKappaScanLimit;
  if (!(kappa_lo < kappa_hi)) return {};

  std::vector<Pole> poles;
  for (int n = 0; n <= n_max; ++n) {
    roots::WindowSearch search;
    search.fixed_end = kappa_lo;
    search.direction = 1.0;
    search.initial_span = 1.0;
    search.limit = std::min(kappa_hi, kKappaScanLimit);
    auto residual = [&](double kappa) { return bound_pole_residual(params, kappa, n); };
    const auto kappa = roots::unique_root(residual, search, fmt::format("pole condition, n = {}", n));
    if (kappa) poles.push_back({n, *kappa, -*kappa * *kappa});
  }
  return poles;
}

PhaseGrid phase_shift_grid(const NatanzonParams& params, std::span<const double> k_grid, const WeightMode& mode,
                           const DeltaFactor& delta) {
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > 0.0)) throw DomainError("k grid must be positive");
    if (i > 0 && !(k_grid[i] > k_grid[i - 1])) throw DomainError("k grid must be strictly increasing");
  }
  const auto coeffs = expansion_coefficients(params);
  PhaseGrid grid;
  grid.points.reserve(k_grid.size());
  bool complex_reported = false;
  for (const double k : k_grid) {
    cplx m = mode.m;
    if (mode.kind == WeightMode::Kind::physical) {
      const auto weight = physical_weight(params, k);
      m = weight.value;
      if (weight.is_complex && !complex_reported) {
        grid.warnings.push_back(fmt::format("physical weight is complex from k = {:.17g} on", k));
        complex_reported = true;
      }
    }
    const double f = coeffs.f_of_k(k);
    for (const cplx arg : {m + 0.5 - kI * f, m + 0.5 + kI * f}) {
      if (gamma_pole_distance(arg) < kPoleWarning)
        grid.warnings.push_back(fmt::format("gamma argument ({:.17g}, {:.17g}) within {} of a pole at k = {:.17g}",
                                            arg.real(), arg.imag(), kPoleWarning, k));
    }
    const cplx log_ratio = log_gamma_ratio(m, f);
    const cplx d = delta ? delta(k) : cplx(1.0);
    double phase = log_ratio.imag() + std::arg(d);
    if (!grid.points.empty()) phase = unwrap(phase, grid.points.back().phase);
    grid.points.push_back({k, m, std::exp(log_ratio) * d, phase});
  }
  return grid;
}

}  // namespace natanzon
