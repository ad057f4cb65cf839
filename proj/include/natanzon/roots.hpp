#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "natanzon/errors.hpp"

namespace natanzon::roots {

/// An interval on which a function changes sign.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Refines a sign-change bracket to full double precision (TOMS 748).
template <class F>
double refine(F&& fn, const Bracket& b) {
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;
  std::uintmax_t iterations = 200;
  boost::math::tools::eps_tolerance<double> tolerance(52);
  auto [lo, hi] = boost::math::tools::toms748_solve(fn, b.lo, b.hi, b.f_lo, b.f_hi, tolerance, iterations);
  if (iterations >= 200) throw NumericalDiagnostic("root refinement did not converge");
  return 0.5 * (lo + hi);
}

/// All sign changes of fn between consecutive nodes (zero counts as positive).
std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& fn, std::span<const double> nodes);

/// Search region for a root that is expected to be unique.
///
/// The window starts at `fixed_end` and grows geometrically in `direction`
/// (+1 or -1) from `initial_span` until the sign at the far end differs from
/// the sign at the fixed end or `limit` is reached.
struct WindowSearch {
  double fixed_end = 0.0;
  double direction = -1.0;
  double initial_span = 1.0;
  double limit = -1e6;
  int scan_points = 512;
};

/// Root of fn inside the grown window. Returns nullopt when there is no sign
/// change, and throws NumericalDiagnostic when the scan finds more than one.
std::optional<double> unique_root(const std::function<double(double)>& fn, const WindowSearch& search,
                                  std::string_view what);

}  // namespace natanzon::roots
