#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "natanzon/errors.hpp"
#include "natanzon/oracle.hpp"
#include "natanzon/spectrum.hpp"

using namespace natanzon;

namespace {

constexpr double kPi = std::numbers::pi;

// f = h0 = -3/4 with a = c0 = 0 makes V vanish identically.
const NatanzonParams kFree = derive(-0.75, -0.75, -1, 0, 0, 1);
// Regular origin (r^2 V -> 0), levels -3.0625 and -0.5625.
const NatanzonParams kRegular = derive(24, -0.75, -1, 0, 0, 4);

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return k;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("free equation gives sin(r)") {
    const PotentialInstance pot(kFree);
    for (double r = 0.1; r < 10.0; r += 0.7) CHECK(std::abs(pot.v_of_r(r)) < 1e-13);
    const RadialProblem problem(pot, 20.0, 4096);
    CHECK(problem.regular_origin());
    CHECK(problem.start_exponent() == doctest::Approx(1.0));
    const auto psi = problem.integrate(1.0);
    const auto& g = problem.grid();
    const int peak = static_cast<int>(std::lround((kPi / 2.0 - g.r_min) / g.step()));
    const double scale = psi[static_cast<std::size_t>(peak)] / std::sin(g.r(peak));
    double worst = 0.0;
    for (int i = 0; i < g.points; ++i) worst = std::max(worst, std::abs(psi[static_cast<std::size_t>(i)] / scale - std::sin(g.r(i))));
    CHECK(worst < 1e-8);
    CHECK(std::abs(phase_numeric(pot, 1.0).delta) < 1e-8);
    CHECK(std::abs(phase_numeric(pot, 3.7).delta) < 1e-8);
  }

  TEST_CASE("node count between levels") {
    const PotentialInstance pot(derive(24, 0, -1, 0, 0, 4));
    const RadialProblem problem(pot, 60.0, 16384);
    CHECK(problem.count_nodes(-3.0) == 0);
    CHECK(problem.count_nodes(-1.0) == 1);
    CHECK(problem.count_nodes(-0.1) == 2);
    CHECK(problem.start_exponent() == doctest::Approx(1.5).epsilon(1e-6));
  }

  TEST_CASE("fourth-order convergence") {
    const PotentialInstance pot(kRegular);
    // Energies on N = 1024 ... 8192 with the exact level known.
    std::vector<double> errors;
    for (const int n : {1024, 2048, 4096}) {
      OracleOptions o;
      o.tolerance = 1.0;
      o.initial_points = n;
      o.max_points = 2 * n;
      o.r_max = 40.0;
      const auto result = bound_energies_numeric(pot, 1, o);
      REQUIRE(result.energies.size() == 1);
      errors.push_back(std::abs(result.energies[0] + 3.0625));
    }
    for (std::size_t i = 1; i < errors.size(); ++i) {
      const double order = std::log2(errors[i - 1] / errors[i]);
      CHECK(order == doctest::Approx(4.0).epsilon(0.05));
    }
  }

  TEST_CASE("bound energies agree with the algebra") {
    const auto f1 = bound_energies_numeric(PotentialInstance(derive(8, 0, -1, 0, 0, 1)), 3);
    REQUIRE(f1.energies.size() == 1);
    CHECK(std::abs(f1.energies[0] + 1.0) < 1e-6);
    CHECK(f1.error_estimate < 1e-6);

    for (const auto& p : {derive(24, 0, -1, 0, 0, 4), derive(40, 0, -1, 1, 0, 2), derive(12, 3, -1, 1, 0, 2), kRegular}) {
      const auto levels = enumerate_levels(p);
      const auto numeric = bound_energies_numeric(PotentialInstance(p), static_cast<int>(levels.size()) + 1);
      REQUIRE(numeric.energies.size() == levels.size());
      for (std::size_t i = 0; i < levels.size(); ++i) CHECK(std::abs(numeric.energies[i] - levels[i].E) < 1e-6);
      CHECK(numeric.grid.points <= 32768);
      for (const double e : numeric.energies) CHECK(e < 0.0);
    }
  }

  TEST_CASE("empty spectrum and scope") {
    CHECK(bound_energies_numeric(PotentialInstance(derive(0, 0, -1, 0, 0, 1)), 2).energies.empty());
    CHECK_THROWS_AS(bound_energies_numeric(PotentialInstance(derive(5, 1, -1, 0.5, 1, 3)), 1), DomainError);
  }

  TEST_CASE("grid-too-coarse diagnostic") {
    OracleOptions o;
    o.tolerance = 1e-14;
    o.initial_points = 256;
    o.max_points = 1024;
    CHECK_THROWS_AS(bound_energies_numeric(PotentialInstance(kRegular), 1, o), NumericalDiagnostic);
  }

  TEST_CASE("phase grid robustness") {
    const PotentialInstance pot(kRegular);
    for (const double k : {0.3, 1.0, 4.0}) {
      const auto point = phase_numeric(pot, k);
      CHECK(point.error_estimate < 1e-6);
    }
    OracleOptions short_box;
    short_box.r_max = 2.0;
    CHECK_THROWS_AS(phase_numeric(pot, 1.0, short_box), NumericalDiagnostic);
  }

  TEST_CASE("Levinson count on a regular origin") {
    const PotentialInstance pot(kRegular);
    const auto result = phase_shifts_numeric(pot, log_grid(0.01, 100.0, 61));
    const double drop = result.phases.front().delta - result.phases.back().delta;
    CHECK(std::abs(drop - 2.0 * kPi) < 0.05 * kPi);
  }

  TEST_CASE("Levinson offset from a singular origin") {
    // r^2 V -> 3/4 gives s = 3/2 and an extra (s - 1) pi / 2 in the phase drop.
    const PotentialInstance pot(derive(24, 0, -1, 0, 0, 4));
    const auto result = phase_shifts_numeric(pot, log_grid(0.01, 100.0, 61));
    const double drop = result.phases.front().delta - result.phases.back().delta;
    CHECK(std::abs(drop - 2.25 * kPi) < 0.05 * kPi);
  }
}
