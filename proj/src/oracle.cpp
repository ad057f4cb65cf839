#include "natanzon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "natanzon/errors.hpp"
#include "natanzon/roots.hpp"

namespace natanzon {

namespace {

constexpr double kRegularOrigin = 1e-8;
constexpr double kSeriesStart = 1e-2;
constexpr double kAsymptoticPotential = 1e-10;
constexpr double kRescale = 1e200;
// Box edge must sit this many decay lengths beyond the origin for the
// weakest level.
constexpr double kDecayLengths = 10.0;
constexpr double kMaxBox = 1e4;

double wrap_difference(double a, double b) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double d = a - b;
  return d - two_pi * std::round(d / two_pi);
}

void require_half_line(const PotentialInstance& pot) {
  if (pot.params().domain_kind() != DomainKind::half_line)
    throw DomainError("the Numerov oracle handles half-line (c0 = 0) parameters only");
}

}  // namespace

RadialProblem::RadialProblem(const PotentialInstance& pot, double r_max, int points, double energy_scale) {
  require_half_line(pot);
  if (points < 16) throw DomainError("radial grid needs at least 16 points");
  if (!(r_max > 0.0)) throw DomainError("radial grid needs r_max > 0");
  if (pot.origin_series()) series_ = *pot.origin_series();
  const double c = series_[0];
  if (c < -0.25) throw DomainError(fmt::format("origin coefficient {} < -1/4: fall to the centre", c));
  regular_ = std::abs(c) < kRegularOrigin;
  exponent_ = regular_ ? 1.0 : 0.5 + std::sqrt(0.25 + c);
  // The series start is accurate to O(r^4) with |E| r^2 small here, and
  // stepping begins clear of the 1/r^2 singularity where Numerov loses its
  // order.
  const double wavelength = energy_scale > 1.0 ? 1.0 / std::sqrt(energy_scale) : 1.0;
  const double r_min =
      regular_ ? 0.0 : kSeriesStart * std::min({1.0, std::sqrt(pot.params().c1), wavelength});
  if (!(r_max > 16.0 * r_min)) throw DomainError("radial grid r_max too small for the origin start");
  grid_ = {r_min, r_max, points};

  v_.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v_[i] = (regular_ && i == 0) ? 0.0 : pot.v_of_r(grid_.r(i));
}

double RadialProblem::start_value(int i, double E) const {
  const double r = grid_.r(i);
  const double s = exponent_;
  const double b1 = series_[1];
  const double b2 = series_[2] - E;
  const double b3 = series_[3];
  const double a1 = b1 / (2.0 * s);
  const double a2 = (b1 * a1 + b2) / (2.0 * (2.0 * s + 1.0));
  const double a3 = (b1 * a2 + b2 * a1 + b3) / (3.0 * (2.0 * s + 2.0));
  return std::pow(r, s) * (1.0 + r * (a1 + r * (a2 + r * a3)));
}

template <class Visit>
void RadialProblem::sweep_outward(double E, int stop, Visit&& visit) const {
  const double h2 = grid_.step() * grid_.step() / 12.0;
  double w_prev = 1.0 - h2 * (v_[0] - E);
  double w_cur = 1.0 - h2 * (v_[1] - E);
  double psi_prev = regular_ ? 0.0 : start_value(0, E);
  double psi_cur = start_value(1, E);
  visit(0, psi_prev, 1.0);
  visit(1, psi_cur, 1.0);
  for (int i = 1; i + 1 <= stop; ++i) {
    const double w_next = 1.0 - h2 * (v_[i + 1] - E);
    const double psi_next = ((12.0 - 10.0 * w_cur) * psi_cur - w_prev * psi_prev) / w_next;
    double scale = 1.0;
    psi_prev = psi_cur;
    psi_cur = psi_next;
    if (std::abs(psi_cur) > kRescale) {
      scale = 1.0 / kRescale;
      psi_prev *= scale;
      psi_cur *= scale;
    }
    w_prev = w_cur;
    w_cur = w_next;
    visit(i + 1, psi_cur, scale);
  }
}

std::vector<double> RadialProblem::integrate(double E) const {
  std::vector<double> psi(static_cast<std::size_t>(grid_.points));
  sweep_outward(E, grid_.points - 1, [&](int i, double value, double scale) {
    if (scale != 1.0)
      for (int j = 0; j < i; ++j) psi[j] *= scale;
    psi[i] = value;
  });
  return psi;
}

int RadialProblem::count_nodes(double E) const {
  int nodes = 0;
  double last_sign = 0.0;
  sweep_outward(E, grid_.points - 1, [&](int i, double value, double) {
    if (i == 0 || value == 0.0) return;
    const double sign = std::copysign(1.0, value);
    if (last_sign != 0.0 && sign != last_sign) ++nodes;
    last_sign = sign;
  });
  return nodes;
}

int RadialProblem::outer_turning_index(double E) const {
  int turn = grid_.points / 2;
  for (int i = grid_.points - 1; i > 0; --i) {
    if (v_[i] < E) {
      turn = i;
      break;
    }
  }
  return std::clamp(turn, 2, grid_.points - 3);
}

double RadialProblem::matching_function(double E, int match) const {
  double out_m = 0.0;
  double out_m1 = 0.0;
  sweep_outward(E, match + 1, [&](int i, double value, double scale) {
    out_m *= scale;
    if (i == match) out_m = value;
    if (i == match + 1) out_m1 = value;
  });

  const int last = grid_.points - 1;
  const double h = grid_.step();
  const double h2 = h * h / 12.0;
  const double kappa = std::sqrt(std::max(v_[last] - E, 0.0));
  double psi_next = 1.0;
  double psi_cur = std::exp(kappa * h);
  double w_next = 1.0 - h2 * (v_[last] - E);
  double w_cur = 1.0 - h2 * (v_[last - 1] - E);
  for (int i = last - 1; i > match; --i) {
    const double w_prev = 1.0 - h2 * (v_[i - 1] - E);
    const double psi_prev = ((12.0 - 10.0 * w_cur) * psi_cur - w_next * psi_next) / w_prev;
    psi_next = psi_cur;
    psi_cur = psi_prev;
    if (std::abs(psi_cur) > kRescale) {
      psi_cur /= kRescale;
      psi_next /= kRescale;
    }
    w_next = w_cur;
    w_cur = w_prev;
  }
  // psi_cur sits at `match`, psi_next at match + 1.
  const double wronskian = out_m * psi_next - out_m1 * psi_cur;
  const double norm = (std::abs(out_m) + std::abs(out_m1)) * (std::abs(psi_cur) + std::abs(psi_next));
  return norm > 0.0 ? wronskian / norm : 0.0;
}

int RadialProblem::asymptotic_index(double threshold) const {
  int index = grid_.points;
  for (int i = grid_.points - 1; i >= 0; --i) {
    if (std::abs(v_[i]) >= threshold) break;
    index = i;
  }
  return index;
}

double RadialProblem::phase(double k) const {
  if (!(k > 0.0)) throw DomainError("phase needs k > 0");
  const int last = grid_.points - 1;
  const int asym = asymptotic_index(kAsymptoticPotential);
  const double h = grid_.step();
  const double r_target = grid_.r_max - std::numbers::pi / (2.0 * k);
  int first = r_target <= grid_.r_min ? 0 : static_cast<int>(std::ceil((r_target - grid_.r_min) / h));
  first = std::max(first, asym);
  if (first >= last || std::abs(v_[std::min(first, last)]) >= kAsymptoticPotential)
    throw NumericalDiagnostic(fmt::format("asymptotic region |V| < {} not reached inside r_max = {}",
                                          kAsymptoticPotential, grid_.r_max));
  const double theta1 = k * grid_.r(first);
  const double theta2 = k * grid_.r(last);
  const double det = std::sin(theta1 - theta2);
  if (std::abs(det) < 1e-3)
    throw NumericalDiagnostic(fmt::format("asymptotic samples too close for k = {}; enlarge r_max", k));

  const auto psi = integrate(k * k);
  const double psi1 = psi[first];
  const double psi2 = psi[last];
  const double x = (psi1 * std::cos(theta2) - psi2 * std::cos(theta1)) / det;
  const double y = (psi2 * std::sin(theta1) - psi1 * std::sin(theta2)) / det;
  return std::atan2(y, x);
}

namespace {

std::vector<double> levels_on_grid(const RadialProblem& problem, double threshold, int level_count) {
  const auto v = problem.potential_samples();
  double e_lo = *std::min_element(v.begin() + 1, v.end()) - 1.0;
  const double e_hi = threshold;
  const int n_lo = problem.count_nodes(e_lo);
  const int n_hi = problem.count_nodes(e_hi);
  const int count = std::min(level_count, n_hi - n_lo);

  std::vector<double> energies;
  for (int j = 0; j < count; ++j) {
    const int target = n_lo + j;
    double lo = e_lo;
    double hi = e_hi;
    // Largest E with `target` nodes below, smallest with more above.
    while (hi - lo > 1e-6 * (1.0 + std::abs(hi))) {
      const double mid = 0.5 * (lo + hi);
      (problem.count_nodes(mid) > target ? hi : lo) = mid;
    }
    const int match = problem.outer_turning_index(0.5 * (lo + hi));
    auto fn = [&](double E) { return problem.matching_function(E, match); };
    const double f_lo = fn(lo);
    const double f_hi = fn(hi);
    double energy;
    if (f_lo * f_hi < 0.0) {
      energy = roots::refine(fn, {lo, hi, f_lo, f_hi});
    } else {
      while (hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        (problem.count_nodes(mid) > target ? hi : lo) = mid;
      }
      energy = 0.5 * (lo + hi);
    }
    energies.push_back(energy);
    e_lo = hi;
  }
  return energies;
}

}  // namespace

OracleResult bound_energies_numeric(const PotentialInstance& pot, int level_count, const OracleOptions& options) {
  require_half_line(pot);
  const auto& p = pot.params();
  const double threshold = p.threshold();
  double r_max = options.r_max > 0.0 ? options.r_max : 20.0 * std::sqrt(p.c1);

  for (;;) {
    OracleResult result;
    result.kind = OracleResult::Kind::bound_spectrum;
    bool converged = false;
    for (int n = options.initial_points; 2 * n <= options.max_points; n *= 2) {
      const auto coarse = levels_on_grid(RadialProblem(pot, r_max, n), threshold, level_count);
      const RadialProblem fine_problem(pot, r_max, 2 * n);
      const auto fine = levels_on_grid(fine_problem, threshold, level_count);
      if (coarse.size() != fine.size()) continue;
      double err = 0.0;
      for (std::size_t i = 0; i < fine.size(); ++i) err = std::max(err, std::abs(fine[i] - coarse[i]));
      result.energies = fine;
      result.grid = fine_problem.grid();
      result.error_estimate = err;
      if (err <= options.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalDiagnostic(fmt::format("grid-too-coarse: bound energies not converged to {} within {} points",
                                            options.tolerance, options.max_points));
    if (options.r_max > 0.0 || result.energies.empty()) return result;
    const double kappa = std::sqrt(std::max(threshold - result.energies.back(), 0.0));
    if (kappa * r_max >= kDecayLengths || r_max >= kMaxBox) return result;
    r_max = std::min(kDecayLengths / std::max(kappa, kDecayLengths / kMaxBox), kMaxBox);
  }
}

PhasePoint phase_numeric(const PotentialInstance& pot, double k, const OracleOptions& options) {
  require_half_line(pot);
  if (!(k > 0.0)) throw DomainError("phase needs k > 0");
  const double r_max = options.r_max > 0.0 ? options.r_max : std::max(20.0 * std::sqrt(pot.params().c1), 10.0 / k);
  double previous = RadialProblem(pot, r_max, options.initial_points, k * k).phase(k);
  for (int n = 2 * options.initial_points; n <= options.max_points; n *= 2) {
    const RadialProblem problem(pot, r_max, n, k * k);
    const double current = problem.phase(k);
    const double err = std::abs(wrap_difference(current, previous));
    if (err <= options.tolerance) return {k, current, err, problem.grid()};
    previous = current;
  }
  throw NumericalDiagnostic(
      fmt::format("grid-too-coarse: phase at k = {} not converged within {} points", k, options.max_points));
}

OracleResult phase_shifts_numeric(const PotentialInstance& pot, std::span<const double> k_grid,
                                  const OracleOptions& options) {
  OracleResult result;
  result.kind = OracleResult::Kind::phase_shift;
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (i > 0 && !(k_grid[i] > k_grid[i - 1])) throw DomainError("k grid must be strictly increasing");
    auto point = phase_numeric(pot, k_grid[i], options);
    if (!result.phases.empty()) {
      const double prev = result.phases.back().delta;
      point.delta = prev + wrap_difference(point.delta, prev);
    }
    result.error_estimate = std::max(result.error_estimate, point.error_estimate);
    if (point.grid.points > result.grid.points) result.grid = point.grid;
    result.phases.push_back(point);
  }
  return result;
}

}  // namespace natanzon
