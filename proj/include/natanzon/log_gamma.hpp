#pragma once

#include <complex>

namespace natanzon {

/// Principal branch of ln Gamma(z) for complex z.
///
/// Shifts z upward until Re z >= 15 and sums the Stirling series there; the
/// shifted factors are removed as a sum of principal logs, which lands on the
/// principal branch without 2 pi i bookkeeping. Relative accuracy ~1e-14 for
/// Re z in [-50, 50], |Im z| <= 100. Throws PoleError at z = 0, -1, -2, ...
std::complex<double> log_gamma(std::complex<double> z);

/// Distance from z to the nearest non-positive integer (inf when Re z > 0.5
/// puts every pole farther than Re z).
double gamma_pole_distance(std::complex<double> z);

}  // namespace natanzon
