#include "natanzon/params.hpp"

#include <cmath>

#include <fmt/format.h>

#include "natanzon/errors.hpp"

namespace natanzon {

NatanzonParams derive(const RawParams& raw) {
  NatanzonParams p;
  p.f = raw.f;
  p.h0 = raw.h0;
  p.h1 = raw.h1;
  p.a = raw.a;
  p.c0 = raw.c0;
  p.c1 = raw.c1;
  p.tau = raw.c1 - raw.c0 - raw.a;
  p.delta_disc = p.tau * p.tau - 4.0 * raw.a * raw.c0;
  return p;
}

NatanzonParams derive(double f, double h0, double h1, double a, double c0, double c1) {
  return derive(RawParams{f, h0, h1, a, c0, c1});
}

double r_poly_infimum(const NatanzonParams& p) {
  double lowest = std::min(p.c0, p.c1);
  if (p.a > 0.0) {
    const double vertex = -p.tau / (2.0 * p.a);
    if (vertex > 0.0 && vertex < 1.0) lowest = std::min(lowest, p.c0 - p.tau * p.tau / (4.0 * p.a));
  }
  return lowest;
}

ValidityReport validate(const NatanzonParams& p, ValidationMode mode) {
  ValidityReport report;
  auto fail = [&](std::string message) { report.violations.push_back(std::move(message)); };

  for (double v : {p.f, p.h0, p.h1, p.a, p.c0, p.c1}) {
    if (!std::isfinite(v)) {
      fail("all parameters must be finite");
      return report;
    }
  }
  if (!(p.c1 > 0.0)) fail(fmt::format("c1 must be positive (c1 = {})", p.c1));
  if (p.c0 < 0.0) fail(fmt::format("c0 must be non-negative (c0 = {})", p.c0));

  if (p.c1 > 0.0 && p.c0 >= 0.0) {
    // R(0) = c0 >= 0 and R(1) = c1 > 0: R can only fail through an interior
    // vertex, or through a vanishing R(0) with non-positive slope.
    bool positive = true;
    if (p.c0 > 0.0) {
      const double vertex = p.a > 0.0 ? -p.tau / (2.0 * p.a) : -1.0;
      if (vertex > 0.0 && vertex < 1.0 && p.c0 - p.tau * p.tau / (4.0 * p.a) <= 0.0) positive = false;
    } else {
      positive = p.tau > 0.0 || (p.tau == 0.0 && p.a > 0.0);
    }
    if (!positive) fail("R(z) = a z^2 + tau z + c0 is not positive on (0, 1)");
  }

  if (mode == ValidationMode::scattering && std::abs(p.h1 + 1.0) > 1e-12)
    fail(fmt::format("scattering requires h1 = -1 (h1 = {})", p.h1));
  return report;
}

double r_poly(const NatanzonParams& params, double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError(fmt::format("R(z) needs z in [0, 1], got {}", z));
  return r_poly_unchecked(params, z);
}

const char* to_string(DomainKind kind) {
  return kind == DomainKind::half_line ? "half-line" : "full-line";
}

const char* to_string(ValidationMode mode) {
  return mode == ValidationMode::bound ? "bound" : "scattering";
}

}  // namespace natanzon
