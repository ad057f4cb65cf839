#include "natanzon/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

#include "natanzon/errors.hpp"

namespace natanzon {

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::j0: return "J0";
    case Generator::j_plus: return "J+";
    case Generator::j_minus: return "J-";
    case Generator::casimir: return "Q";
    case Generator::j0_inf: return "J0_inf";
    case Generator::j_plus_inf: return "J+_inf";
    case Generator::j_minus_inf: return "J-_inf";
    case Generator::casimir_inf: return "Q_inf";
    case Generator::l_z: return "Lz";
    case Generator::p_plus: return "P+";
    case Generator::p_minus: return "P-";
    case Generator::p_squared: return "P2";
    case Generator::p_plus_inf: return "P+_inf";
    case Generator::p_minus_inf: return "P-_inf";
    case Generator::p_squared_inf: return "P2_inf";
    case Generator::energy_gap: return "E-H";
    case Generator::scaled_energy_gap: return "G(E-H)";
  }
  return "?";
}

ReducedOperator::ReducedOperator(Generator generator, const NatanzonParams& params, double p, double energy)
    : generator_(generator), params_(params), p_(p), energy_(energy) {}

int ReducedOperator::shift() const {
  switch (generator_) {
    case Generator::j_plus:
    case Generator::j_plus_inf:
    case Generator::p_plus:
    case Generator::p_plus_inf:
      return 1;
    case Generator::j_minus:
    case Generator::j_minus_inf:
    case Generator::p_minus:
    case Generator::p_minus_inf:
      return -1;
    default:
      return 0;
  }
}

bool ReducedOperator::needs_mapping() const {
  switch (generator_) {
    case Generator::j_plus:
    case Generator::j_minus:
    case Generator::casimir:
    case Generator::energy_gap:
    case Generator::scaled_energy_gap:
      return true;
    default:
      return false;
  }
}

std::vector<TestFunction> standard_test_functions(double sqrt_c1) {
  const double lo = 0.5 * sqrt_c1;
  const double length = 4.5 * sqrt_c1;
  auto gaussian = [&](double at, double width, std::array<cplx, 3> poly) {
    TestFunction fn;
    fn.center = lo + at * length;
    fn.width = width * sqrt_c1;
    fn.poly = poly;
    return fn;
  };
  return {
      gaussian(0.5, 0.2, {1.0, 0.0, 0.0}),
      gaussian(0.45, 0.15, {0.5, 1.0, 0.0}),
      gaussian(0.55, 0.15, {cplx(0.3, 0.7), 0.0, 1.0}),
      gaussian(0.4, 0.1, {1.0, cplx(0.0, -2.0), 3.0}),
      gaussian(0.6, 0.1, {cplx(-1.0, 0.5), 2.0, cplx(0.0, 4.0)}),
  };
}

PeriodicGrid standard_window(const NatanzonParams& params, int points) {
  const double s = std::sqrt(params.c1);
  return {0.5 * s, 5.0 * s, points};
}

// ---------------------------------------------------------------------------

struct SpectralDifferentiator::Plans {
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(int n) {
    buffer = fftw_alloc_complex(static_cast<std::size_t>(n));
    forward = fftw_plan_dft_1d(n, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(n, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(buffer);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

SpectralDifferentiator::SpectralDifferentiator(int points, double length)
    : plans_(std::make_unique<Plans>(points)), points_(points), length_(length) {
  if (points < 8 || points % 2 != 0) throw DomainError("spectral grid needs an even number of points >= 8");
}

SpectralDifferentiator::~SpectralDifferentiator() = default;

std::vector<cplx> SpectralDifferentiator::derivative(std::span<const cplx> f, int order) const {
  if (static_cast<int>(f.size()) != points_) throw DomainError("sample count does not match the spectral grid");
  auto* data = reinterpret_cast<cplx*>(plans_->buffer);
  std::copy(f.begin(), f.end(), data);
  fftw_execute(plans_->forward);
  const double base = 2.0 * std::numbers::pi / length_;
  for (int j = 0; j < points_; ++j) {
    const int mode = j <= points_ / 2 ? j : j - points_;
    cplx factor = std::pow(cplx(0.0, base * mode), order);
    if (j == points_ / 2 && order % 2 == 1) factor = 0.0;
    data[j] *= factor / static_cast<double>(points_);
  }
  fftw_execute(plans_->backward);
  return {data, data + points_};
}

// ---------------------------------------------------------------------------

SpectralBackend::SpectralBackend(const PeriodicGrid& grid, const ChangeOfVariable* mapping)
    : grid_(grid), diff_(grid.points, grid.hi - grid.lo) {
  r_.resize(static_cast<std::size_t>(grid.points));
  z_.assign(r_.size(), std::numeric_limits<double>::quiet_NaN());
  w_.assign(r_.size(), std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < grid.points; ++i) {
    r_[i] = grid.r(i);
    if (mapping) {
      const auto pt = mapping->point_at(r_[i]);
      z_[i] = pt.z;
      w_[i] = pt.w;
    }
  }
}

SpectralBackend::Function SpectralBackend::sample(const TestFunction& fn) const {
  Function f(r_.size());
  for (std::size_t i = 0; i < r_.size(); ++i) f[i] = fn(cplx(r_[i]));
  return f;
}

SpectralBackend::Function SpectralBackend::apply(const ReducedOperator& op, const Function& f, double m) const {
  if (op.needs_mapping() && std::isnan(z_.front())) throw DomainError("operator needs the mapping z(r)");
  const auto d1 = diff_.derivative(f, 1);
  const auto d2 = diff_.derivative(f, 2);
  Function out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto c = op.coefficients(cplx(z_[i]), cplx(r_[i]), m);
    out[i] = c[0] * d2[i] + c[1] * d1[i] + c[2] * f[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

JetBackend::JetBackend(std::vector<double> points, const ChangeOfVariable* mapping) : points_(std::move(points)) {
  r_.reserve(points_.size());
  z_.reserve(points_.size());
  for (const double r0 : points_) {
    r_.push_back(JetC::variable(r0));
    if (!mapping) {
      z_.push_back(JetC(std::numeric_limits<double>::quiet_NaN()));
      continue;
    }
    const auto& p = mapping->params();
    const JetC z0(mapping->z_of_r(r0));
    // Each Picard sweep fixes one more Taylor coefficient.
    JetC z = z0;
    for (int sweep = 0; sweep <= JetC::order; ++sweep) {
      const JetC r_poly = (p.a * z + p.tau) * z + p.c0;
      z = z0 + (2.0 * z * (1.0 - z) / sqrt(r_poly)).integral();
    }
    z_.push_back(z);
  }
}

JetBackend::Function JetBackend::sample(const TestFunction& fn) const {
  Function f;
  f.reserve(r_.size());
  for (const auto& r : r_) f.push_back(fn(r));
  return f;
}

JetBackend::Function JetBackend::apply(const ReducedOperator& op, const Function& f, double m) const {
  if (op.needs_mapping() && std::isnan(z_.front().value().real()))
    throw DomainError("operator needs the mapping z(r)");
  Function out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto c = op.coefficients(z_[i], r_[i], m);
    const JetC d1 = f[i].derivative();
    out[i] = c[0] * d1.derivative() + c[1] * d1 + c[2] * f[i];
  }
  return out;
}

}  // namespace natanzon
