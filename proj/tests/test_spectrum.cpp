#include <doctest.h>

#include <cmath>

#include "natanzon/errors.hpp"
#include "natanzon/spectrum.hpp"
#include "reference_values.hpp"
#include "scan_oracle.hpp"

using namespace natanzon;

namespace {

const NatanzonParams kF1 = derive(8, 0, -1, 0, 0, 1);
const NatanzonParams kF2 = derive(24, 0, -1, 0, 0, 4);
const NatanzonParams kF3 = derive(40, 0, -1, 1, 0, 2);
const NatanzonParams kFgen = derive(12, 3, -1, 1, 0, 2);

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("residual arithmetic") {
    for (const double f : {0.0, 3.0, 8.0, 15.0}) {
      const auto p = derive(f, 0, -1, 0, 0, 1);
      CHECK(quantization_residual(p, -1.0, 0) == doctest::Approx(std::sqrt(f + 1.0) - 3.0).epsilon(1e-15));
    }
    CHECK(quantization_residual(kF1, -1.0, 0) == 0.0);
    CHECK_THROWS_AS(quantization_residual(kF1, 1.0, 0), DomainError);
    try {
      quantization_residual(kF1, 1.0, 0);
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("delta") != std::string::npos);
    }
  }

  TEST_CASE("constructed root") {
    const auto level = solve_level(kF1, 0);
    REQUIRE(level);
    CHECK(level->E == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(level->alpha == doctest::Approx(3.0));
    CHECK(level->beta == doctest::Approx(1.0));
    CHECK(level->delta == doctest::Approx(1.0));
    CHECK(level->m == doctest::Approx(1.0));
    CHECK(level->p == doctest::Approx(2.0));
    CHECK(std::abs(level->q) < 1e-12);
    CHECK_FALSE(solve_level(kF1, 1));
    CHECK_FALSE(solve_level(kF1, 20));
  }

  TEST_CASE("generic family regression value") {
    const auto level = solve_level(kFgen, 0);
    REQUIRE(level);
    CHECK(level->E == doctest::Approx(reference::kFgenE0).epsilon(1e-12));
    const auto scanned = testing::scan_spectrum(kFgen, -30.0);
    REQUIRE(scanned.size() == 1);
    CHECK(std::abs(scanned[0] - reference::kFgenE0) < 1e-12);
  }

  TEST_CASE("enumerate_levels matches the scan oracle") {
    for (const auto& p : {kF1, kF2, kF3, kFgen, derive(5, 1, -1, 0.5, 0, 3), derive(30, 2, -1, -0.5, 0, 1.5)}) {
      const auto levels = enumerate_levels(p);
      const auto scanned = testing::scan_spectrum(p, -60.0);
      REQUIRE(levels.size() == scanned.size());
      for (std::size_t i = 0; i < levels.size(); ++i) {
        CHECK(std::abs(levels[i].E - scanned[i]) < 1e-8);
        CHECK(levels[i].nu == static_cast<int>(i));
        CHECK(std::abs(quantization_residual(p, levels[i].E, levels[i].nu)) < 1e-12);
        CHECK(levels[i].E < p.threshold());
        if (i > 0) CHECK(levels[i].E > levels[i - 1].E);
        // Equivalent form of the quantization condition.
        CHECK(std::abs(levels[i].m - (levels[i].nu + 0.5 + std::sqrt(levels[i].q + 0.25))) < 1e-10);
      }
    }
  }

  TEST_CASE("known spectra") {
    auto energies = [](const NatanzonParams& p) {
      std::vector<double> e;
      for (const auto& l : enumerate_levels(p)) e.push_back(l.E);
      return e;
    };
    CHECK(energies(kF2).size() == 2);
    CHECK(energies(kF2)[0] == doctest::Approx(-2.25).epsilon(1e-13));
    CHECK(energies(kF2)[1] == doctest::Approx(-0.25).epsilon(1e-13));
    const auto f3 = energies(kF3);
    REQUIRE(f3.size() == 3);
    CHECK(f3[0] == doctest::Approx(reference::kF3E0).epsilon(1e-12));
    CHECK(f3[1] == doctest::Approx(reference::kF3E1).epsilon(1e-12));
    CHECK(f3[2] == doctest::Approx(reference::kF3E2).epsilon(1e-12));
  }

  TEST_CASE("empty spectrum") {
    const auto shallow = derive(0, 0, -1, 0, 0, 1);
    CHECK(enumerate_levels(shallow).empty());
    CHECK(testing::scan_spectrum(shallow, -60.0).empty());
  }

  TEST_CASE("admissible window") {
    const auto w = admissible_window(kF1);
    CHECK(std::isinf(w.lower));
    CHECK(w.upper == 0.0);
    // a < 0 bounds E from below where alpha's radicand vanishes.
    const auto neg = admissible_window(derive(3, 0, -1, -2, 0, 1));
    CHECK(neg.lower == doctest::Approx(-2.0));
  }

  TEST_CASE("h(eta)") {
    CHECK(h_of_eta(derive(0, 0, -1, 0, 0, 2), 0.25) == doctest::Approx(-0.5));
    for (const auto& p : {kF1, kF2, kF3, kFgen})
      for (const auto& l : enumerate_levels(p)) CHECK(std::abs(h_of_eta(p, l.q + 0.25) - l.E) < 1e-12);
    for (const double k : {0.1, 1.0, 3.0}) {
      const double f = 0.5 * k * std::sqrt(kF3.c1);
      CHECK(h_of_eta(kF3, -f * f) == doctest::Approx(k * k).epsilon(1e-14));
    }
  }
}
