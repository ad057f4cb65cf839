#pragma once

#include <array>
#include <span>
#include <vector>

#include "natanzon/potential.hpp"

namespace natanzon {

/// Uniform radial grid r_i = r_min + i h, i = 0..points-1.
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int points = 0;

  double step() const { return (r_max - r_min) / (points - 1); }
  double r(int i) const { return r_min + step() * i; }
};

struct OracleOptions {
  /// Target for the step-halving difference (energy or phase).
  double tolerance = 1e-6;
  int initial_points = 4096;
  int max_points = 1 << 20;
  /// Box size; 0 selects it automatically.
  double r_max = 0.0;
};

struct PhasePoint {
  double k = 0.0;
  /// delta in psi ~ sin(k r + delta), unwrapped when part of a grid.
  double delta = 0.0;
  double error_estimate = 0.0;
  RadialGrid grid;
};

struct OracleResult {
  enum class Kind { bound_spectrum, phase_shift };
  Kind kind = Kind::bound_spectrum;
  std::vector<double> energies;
  std::vector<PhasePoint> phases;
  /// Finest grid used (for phases, the finest over all k).
  RadialGrid grid;
  /// Largest difference between the N and 2N results.
  double error_estimate = 0.0;
};

/// Numerov discretisation of -psi'' + V psi = E psi on a half-line grid, with
/// V sampled once.
///
/// The origin start is psi = r^s (1 + ...) with s = 1/2 + sqrt(1/4 + C), C the
/// fitted lim r^2 V, and the series continued through r^3 from the fitted
/// expansion of r^2 V. When C vanishes the grid starts at r = 0 with
/// psi(0) = 0; otherwise it starts at r = 0.01 min(1, sqrt(c1), 1/sqrt(|E|)),
/// with |E| the `energy_scale` the problem is solved at.
class RadialProblem {
 public:
  RadialProblem(const PotentialInstance& pot, double r_max, int points, double energy_scale = 0.0);

  const RadialGrid& grid() const { return grid_; }
  double start_exponent() const { return exponent_; }
  bool regular_origin() const { return regular_; }
  std::span<const double> potential_samples() const { return v_; }

  /// Outward solution at energy E on the whole grid.
  std::vector<double> integrate(double E) const;
  /// Sign changes of the outward solution on (r_min, r_max].
  int count_nodes(double E) const;
  /// Normalised Casoratian of the outward solution and an inward solution
  /// started as a decaying exponential, at grid index `match`. Vanishes at
  /// eigenvalues.
  double matching_function(double E, int match) const;
  /// Last index where V < E (outer turning point), clamped to the interior.
  int outer_turning_index(double E) const;
  /// First index beyond which |V| stays below `threshold`; points if never.
  int asymptotic_index(double threshold) const;
  /// Phase in (-pi, pi] from two asymptotic samples at E = k^2.
  double phase(double k) const;

 private:
  /// Frobenius start r^s (1 + a1 r + a2 r^2 + a3 r^3) at grid index i.
  double start_value(int i, double E) const;

  template <class Visit>
  void sweep_outward(double E, int stop, Visit&& visit) const;

  RadialGrid grid_;
  bool regular_;
  double exponent_;
  std::array<double, 4> series_{};
  std::vector<double> v_;
};

/// Bound levels below threshold by node-count bisection refined with the
/// Casoratian match. The grid is doubled until successive energies agree to
/// options.tolerance. Throws NumericalDiagnostic (grid-too-coarse) otherwise,
/// and DomainError for full-line parameters.
OracleResult bound_energies_numeric(const PotentialInstance& pot, int level_count, const OracleOptions& options = {});

/// Phase at one k, step-halved to options.tolerance.
PhasePoint phase_numeric(const PotentialInstance& pot, double k, const OracleOptions& options = {});

/// Phases over an increasing k grid, unwrapped.
OracleResult phase_shifts_numeric(const PotentialInstance& pot, std::span<const double> k_grid,
                                  const OracleOptions& options = {});

}  // namespace natanzon
