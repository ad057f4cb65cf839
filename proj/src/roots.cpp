#include "natanzon/roots.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace natanzon::roots {

std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& fn, std::span<const double> nodes) {
  std::vector<Bracket> out;
  if (nodes.size() < 2) return out;
  double x_prev = nodes[0];
  double f_prev = fn(x_prev);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double x = nodes[i];
    const double fx = fn(x);
    if ((f_prev < 0.0) != (fx < 0.0)) {
      if (x_prev < x)
        out.push_back({x_prev, x, f_prev, fx});
      else
        out.push_back({x, x_prev, fx, f_prev});
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

std::optional<double> unique_root(const std::function<double(double)>& fn, const WindowSearch& search,
                                  std::string_view what) {
  const double dir = search.direction < 0.0 ? -1.0 : 1.0;
  auto beyond_limit = [&](double x) { return dir < 0.0 ? x <= search.limit : x >= search.limit; };

  double fixed = search.fixed_end;
  double f_fixed = fn(fixed);
  if (f_fixed == 0.0) {
    // A root sitting exactly on the fixed end is not counted.
    fixed += dir * 1e-12 * std::max(1.0, std::abs(fixed));
    f_fixed = fn(fixed);
  }
  if (beyond_limit(fixed)) return std::nullopt;

  double span = search.initial_span;
  double far = fixed + dir * span;
  for (;;) {
    if (beyond_limit(far)) far = search.limit;
    const double f_far = fn(far);
    if ((f_far < 0.0) != (f_fixed < 0.0) || far == search.limit) break;
    span *= 2.0;
    far = fixed + dir * span;
  }

  const int n = std::max(search.scan_points, 2);
  std::vector<double> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = fixed + (far - fixed) * i / (n - 1);
  nodes.back() = far;

  const auto brackets = scan_sign_changes(fn, nodes);
  if (brackets.empty()) return std::nullopt;
  if (brackets.size() > 1) {
    std::string where;
    for (const auto& b : brackets) where += fmt::format(" [{:.17g}, {:.17g}]", b.lo, b.hi);
    throw NumericalDiagnostic(fmt::format("{}: {} sign changes in the search window:{}", what, brackets.size(), where));
  }
  return refine(fn, brackets.front());
}

}  // namespace natanzon::roots
