#include "natanzon/spectrum.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "natanzon/errors.hpp"
#include "natanzon/roots.hpp"

namespace natanzon {

namespace {

constexpr double kEnergyScanLimit = 1e6;
constexpr int kMaxLevels = 100000;

}  // namespace

Radicals radicals(const NatanzonParams& p, double E) {
  const double ra = -p.a * E + p.f + 1.0;
  const double rb = -p.c0 * E + p.h0 + 1.0;
  const double rd = -p.c1 * E + p.h1 + 1.0;
  if (ra < 0.0) throw DomainError(fmt::format("alpha radicand -aE+f+1 = {} < 0 at E = {}", ra, E));
  if (rb < 0.0) throw DomainError(fmt::format("beta radicand -c0E+h0+1 = {} < 0 at E = {}", rb, E));
  if (rd < 0.0) throw DomainError(fmt::format("delta radicand -c1E+h1+1 = {} < 0 at E = {}", rd, E));
  return {std::sqrt(ra), std::sqrt(rb), std::sqrt(rd)};
}

double quantization_residual(const NatanzonParams& params, double E, int nu) {
  const auto [alpha, beta, delta] = radicals(params, E);
  return alpha - beta - delta - (2.0 * nu + 1.0);
}

EnergyWindow admissible_window(const NatanzonParams& p) {
  double upper = p.threshold();
  double lower = -std::numeric_limits<double>::infinity();
  // -x E + y >= 0 bounds E from above when x > 0 and from below when x < 0.
  auto clip = [&](double x, double y) {
    if (x > 0.0)
      upper = std::min(upper, y / x);
    else if (x < 0.0)
      lower = std::max(lower, y / x);
  };
  clip(p.a, p.f + 1.0);
  clip(p.c0, p.h0 + 1.0);
  return {lower, upper};
}

std::optional<BoundState> solve_level(const NatanzonParams& params, int nu) {
  if (nu < 0) throw DomainError("level index must be non-negative");
  const auto window = admissible_window(params);
  if (!(window.lower <= window.upper)) return std::nullopt;
  // A constant radicand that is negative leaves no admissible energy at all.
  if (params.a == 0.0 && params.f + 1.0 < 0.0) return std::nullopt;
  if (params.c0 == 0.0 && params.h0 + 1.0 < 0.0) return std::nullopt;

  roots::WindowSearch search;
  search.fixed_end = window.upper;
  search.direction = -1.0;
  search.initial_span = 1.0;
  search.limit = std::max(window.lower, -kEnergyScanLimit);
  auto residual = [&](double E) { return quantization_residual(params, E, nu); };
  const auto root = roots::unique_root(residual, search, fmt::format("quantization condition, nu = {}", nu));
  if (!root) return std::nullopt;

  BoundState level;
  level.nu = nu;
  level.E = *root;
  const auto rad = radicals(params, level.E);
  level.alpha = rad.alpha;
  level.beta = rad.beta;
  level.delta = rad.delta;
  level.m = 0.5 * (rad.alpha - rad.beta);
  level.p = 0.5 * (rad.alpha + rad.beta);
  level.q = 0.25 * (rad.delta * rad.delta - 1.0);
  return level;
}

std::vector<BoundState> enumerate_levels(const NatanzonParams& params) {
  std::vector<BoundState> levels;
  for (int nu = 0;; ++nu) {
    if (nu >= kMaxLevels) throw NumericalDiagnostic("more than 100000 levels; spectrum not isolated");
    auto level = solve_level(params, nu);
    if (!level) break;
    if (!levels.empty() && !(level->E > levels.back().E))
      throw NumericalDiagnostic(fmt::format("levels not ordered: E_{} = {} after E_{} = {}", nu, level->E,
                                            nu - 1, levels.back().E));
    levels.push_back(*level);
  }
  return levels;
}

double h_of_eta(const NatanzonParams& params, double eta) {
  return -4.0 * eta / params.c1 + (params.h1 + 1.0) / params.c1;
}

}  // namespace natanzon
