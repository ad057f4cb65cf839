#include <doctest.h>

#include <random>

#include "natanzon/errors.hpp"
#include "natanzon/params.hpp"

using namespace natanzon;

TEST_SUITE("params") {
  TEST_CASE("derive computes tau and the discriminant") {
    auto p = derive(1, 0, -1, 1, 0, 2);
    CHECK(p.tau == 1.0);
    CHECK(p.delta_disc == 1.0);

    p = derive(0, 0, -1, 0, 3, 3);
    CHECK(p.tau == 0.0);
    CHECK(p.delta_disc == 0.0);

    p = derive(0, 0, -1, 0, 0, 4);
    CHECK(p.tau == 4.0);
    CHECK(p.delta_disc == 16.0);
  }

  TEST_CASE("derive is idempotent") {
    const auto p = derive(2.5, 1.0, -1.0, 0.3, 0.2, 1.7);
    CHECK(derive(p.raw()) == p);
  }

  TEST_CASE("validate reports violations without throwing") {
    const auto bad = validate(derive(0, 0, -1, 0, 0, -1), ValidationMode::bound);
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.violations.front().find("c1 must be positive") != std::string::npos);

    CHECK(validate(derive(0, 0, -1, 0, 0, 4), ValidationMode::scattering).ok());
    CHECK_FALSE(validate(derive(0, 0, 0, 0, 0, 4), ValidationMode::scattering).ok());
    CHECK(validate(derive(0, 0, 0, 0, 0, 4), ValidationMode::bound).ok());
    CHECK_FALSE(validate(derive(0, 0, -1, 0, -0.5, 4), ValidationMode::bound).ok());
  }

  TEST_CASE("R positivity by exact vertex minimisation") {
    // a = -100, c0 = 0, c1 = 1: tau = 101, R = z (101 - 100 z) > 0 on (0, 1).
    const auto concave = derive(0, 0, -1, -100, 0, 1);
    CHECK(r_poly(concave, 0.5) == doctest::Approx(25.5));
    CHECK(validate(concave, ValidationMode::bound).ok());

    // a = 100, c0 = 1, c1 = 1: tau = -100, vertex at 1/2, R(1/2) = -24.
    const auto dipping = derive(0, 0, -1, 100, 1, 1);
    CHECK(r_poly(dipping, 0.5) == doctest::Approx(-24.0));
    CHECK(r_poly_infimum(dipping) == doctest::Approx(-24.0));
    const auto report = validate(dipping, ValidationMode::bound);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().find("not positive") != std::string::npos);

    // c0 = 0 with a negative slope at the origin.
    CHECK_FALSE(validate(derive(0, 0, -1, 2, 0, 1), ValidationMode::bound).ok());
  }

  TEST_CASE("r_poly endpoints and arithmetic") {
    const auto p = derive(1, 0, -1, 1, 0, 2);
    CHECK(r_poly(p, 0.5) == doctest::Approx(0.75));
    CHECK_THROWS_AS(r_poly(p, 1.5), DomainError);
    CHECK_THROWS_AS(r_poly(p, -0.1), DomainError);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.1, 5.0);
    int checked = 0;
    while (checked < 200) {
      const auto q = derive(u(rng), u(rng), u(rng), u(rng), checked % 2 ? 0.0 : pos(rng), pos(rng));
      if (!validate(q, ValidationMode::bound)) continue;
      CHECK(r_poly(q, 1.0) == doctest::Approx(q.c1).epsilon(1e-15));
      CHECK(r_poly(q, 0.0) == q.c0);
      ++checked;
    }
  }

  TEST_CASE("scattering validity implies bound validity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
      const auto p = derive(u(rng), u(rng), i % 3 ? -1.0 : u(rng), u(rng), std::abs(u(rng)) * (i % 2), u(rng));
      if (validate(p, ValidationMode::scattering)) CHECK(validate(p, ValidationMode::bound).ok());
    }
  }

  TEST_CASE("domain kind follows c0") {
    CHECK(derive(0, 0, -1, 0, 0, 1).domain_kind() == DomainKind::half_line);
    CHECK(derive(0, 0, -1, 0, 1, 1).domain_kind() == DomainKind::full_line);
    CHECK(derive(0, 0, 1, 0, 0, 4).threshold() == 0.5);
  }
}
