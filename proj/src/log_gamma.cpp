#include "natanzon/log_gamma.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

constexpr double kHalfLn2Pi = 0.91893853320467274178;
constexpr double kShiftTarget = 15.0;

// B_{2j} / (2j (2j - 1)), j = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,       1.0 / 1260.0,        -1.0 / 1680.0,        1.0 / 1188.0,
    -691.0 / 360360.0,  1.0 / 156.0,        -3617.0 / 122400.0,  43867.0 / 244188.0,   -174611.0 / 125400.0,
};

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleError(fmt::format("log Gamma has a pole at {}", z.real()), static_cast<long>(z.real()));

  std::complex<double> shift_sum = 0.0;
  while (z.real() < kShiftTarget) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = 0.0;
  for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) series = series * inv2 + *it;
  series *= inv;
  return (z - 0.5) * std::log(z) - z + kHalfLn2Pi + series - shift_sum;
}

double gamma_pole_distance(std::complex<double> z) {
  if (z.real() > 0.5) return std::abs(z);
  const double nearest = std::min(0.0, std::round(z.real()));
  return std::abs(z - nearest);
}

}  // namespace natanzon
