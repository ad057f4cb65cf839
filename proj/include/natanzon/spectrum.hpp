#pragma once

#include <optional>
#include <vector>

#include "natanzon/params.hpp"

namespace natanzon {

/// One bound level and its algebra labels.
struct BoundState {
  int nu = 0;
  double E = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  /// (alpha - beta) / 2, the compact-generator eigenvalue
  double m = 0.0;
  /// (alpha + beta) / 2
  double p = 0.0;
  /// (delta^2 - 1) / 4, the Casimir eigenvalue
  double q = 0.0;
};

struct Radicals {
  double alpha;
  double beta;
  double delta;
};

/// alpha = sqrt(-a E + f + 1), beta = sqrt(-c0 E + h0 + 1),
/// delta = sqrt(-c1 E + h1 + 1). Throws DomainError naming the first negative
/// radicand.
Radicals radicals(const NatanzonParams& params, double E);

/// alpha - beta - delta - (2 nu + 1).
double quantization_residual(const NatanzonParams& params, double E, int nu);

/// Energies where every radicand is non-negative and E is below threshold.
/// `lower` is -inf unless a < 0.
struct EnergyWindow {
  double lower;
  double upper;
};
EnergyWindow admissible_window(const NatanzonParams& params);

/// Level nu, or nullopt when the quantization condition has no root below
/// threshold. Throws NumericalDiagnostic if the residual has several roots.
std::optional<BoundState> solve_level(const NatanzonParams& params, int nu);

/// All levels nu = 0, 1, ... up to the first absent one, ordered by energy.
std::vector<BoundState> enumerate_levels(const NatanzonParams& params);

/// h(eta) = -4 eta / c1 + (h1 + 1) / c1, the energy as a function of
/// q + 1/4.
double h_of_eta(const NatanzonParams& params, double eta);

}  // namespace natanzon
