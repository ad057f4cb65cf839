#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "natanzon/mapping.hpp"
#include "natanzon/operators.hpp"
#include "natanzon/params.hpp"

namespace natanzon {

/// Residuals below this count as an identity holding.
inline constexpr double kClosureTolerance = 1e-8;

/// The so(2,1) realization of J0, J+-, Q at a given weight m and parameter p.
struct So21Realization {
  NatanzonParams params;
  double p = 0.0;
  double m = 0.0;
  ReducedOperator j0;
  ReducedOperator j_plus;
  ReducedOperator j_minus;
  ReducedOperator casimir;
};

So21Realization build_so21(const NatanzonParams& params, double p, double m);

/// Q = s (J0^2 - e J0 - J+ J-), s, e in {+1, -1}.
struct CasimirCandidate {
  int s = 1;
  int e = 1;
  std::string label;
  double residual = 0.0;
  bool passes = false;
};

struct ClosureReport {
  /// [J0, J+] - J+
  double j0_jplus = 0.0;
  /// [J0, J-] + J-
  double j0_jminus = 0.0;
  /// [J+, J-] + 2 J0
  double jplus_jminus = 0.0;
  /// Largest spectral-vs-jet difference over single and composed operators.
  double backend_agreement = 0.0;
  std::vector<CasimirCandidate> casimir;
  /// Index into `casimir` when exactly one candidate passes.
  std::optional<std::size_t> casimir_winner;

  double max_commutator() const;
};

/// Applies the commutators and Casimir candidates to each test function on a
/// periodic window (spectral backend). Residuals are sup norms relative to the
/// largest term.
ClosureReport check_so21_closure(const So21Realization& realization, const ChangeOfVariable& mapping,
                                 std::span<const TestFunction> tests, const PeriodicGrid& window);

struct ConnectionTrial {
  double m = 0.0;
  double residual = 0.0;
};

struct ConnectionReport {
  /// sup |(Q - q) f - G (E - H) f| relative to sup |Q f|, best trial.
  double residual = 0.0;
  double m_used = 0.0;
  std::vector<ConnectionTrial> trials;
  /// (r, G(r)) samples of the extracted factor.
  std::vector<std::pair<double, double>> g_samples;
  /// max |G - R/(4z)| / |G| over the samples.
  double g_formula_error = 0.0;
};

/// Residual of (Q - q) = G (E - H) on the test functions; retries with -m when
/// the first sign fails.
ConnectionReport check_connection(const NatanzonParams& params, const ChangeOfVariable& mapping, double p, double m,
                                  double E, double q, std::span<const TestFunction> tests, const PeriodicGrid& window);

struct E2Report {
  /// [P+, P-] on Gaussians, equivalent to [Px, Py] = 0.
  double px_py = 0.0;
  /// P+ P- - P^2
  double factorization = 0.0;
  /// [Lz, P+-] -+ P+-
  double lz_p = 0.0;
  /// |P+-_inf e^{+-ikr} - (+-k) e^{+-ikr}|
  double p_inf_action = 0.0;
  /// |P2_inf e^{+-ikr} - k^2 e^{+-ikr}|
  double p2_inf_action = 0.0;
  /// |Lz e^{ikr} - m e^{ikr}|
  double lz_weight = 0.0;
  /// Largest coefficient difference between the polar realization and its
  /// r -> inf form at r = 1e9.
  double asymptotic_limit = 0.0;

  double max_residual() const;
};

E2Report check_e2(double k, double m);

struct ExpansionPerturbation {
  double f_scale = 1.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
};

/// max over e^{+-ikr} of |J+_inf phi - e^{i gamma}/(+-k) (m + 1/2 -+ i f) P+_inf phi|
/// with f = f_scale k sqrt(c1)/2.
double check_euclidean_expansion(const NatanzonParams& params, double k, double m,
                                 const ExpansionPerturbation& perturbation = {});

/// Largest coefficient difference between J+-, Q and their r -> inf forms,
/// evaluated where 1 - z ~ 1e-10.
double check_asymptotic_generators(const NatanzonParams& params, const ChangeOfVariable& mapping, double p,
                                   double m);

}  // namespace natanzon
