#include "natanzon/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "natanzon/algebra_check.hpp"
#include "natanzon/errors.hpp"
#include "natanzon/mapping.hpp"
#include "natanzon/oracle.hpp"
#include "natanzon/potential.hpp"
#include "natanzon/smatrix.hpp"
#include "natanzon/spectrum.hpp"

namespace natanzon::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kDefaultGridCount = 101;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when parameters fail validation; the report goes to the error
/// stream.
class ValidationFailure : public std::runtime_error {
 public:
  explicit ValidationFailure(ValidityReport report)
      : std::runtime_error("parameters failed validation"), report(std::move(report)) {}
  ValidityReport report;
};

struct Options {
  std::string params;
  std::string grid;
  std::string mode = "physical";
  std::string out;
  std::string format = "json";
  double tolerance = 1e-6;
  bool scattering = false;
  int n_max = 64;
  std::optional<double> p;
  std::optional<double> m;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Output {
  json document;
  std::optional<Table> table;
};

double parse_number(std::string_view text, const char* what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument(fmt::format("{}: '{}' is not a number", what, text));
  return value;
}

json params_json(const NatanzonParams& p) {
  return {{"f", p.f}, {"h0", p.h0}, {"h1", p.h1}, {"a", p.a}, {"c0", p.c0}, {"c1", p.c1}};
}

json grid_json(const RadialGrid& g) { return {{"r_min", g.r_min}, {"r_max", g.r_max}, {"points", g.points}}; }

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt::format("{:.17g}", row[i]);
    os << '\n';
  }
}

NatanzonParams checked_params(const Options& opt, ValidationMode mode) {
  if (opt.params.empty()) throw UsageError("--params is required");
  const auto params = derive(parse_params(opt.params));
  auto report = validate(params, mode);
  if (!report) throw ValidationFailure(std::move(report));
  return params;
}

GridSpec grid_or(const Options& opt, GridSpec fallback) {
  return opt.grid.empty() ? fallback : parse_grid(opt.grid);
}

GridSpec default_r_grid(const NatanzonParams& p, double half_line_start) {
  const double s = std::sqrt(p.c1);
  if (p.domain_kind() == DomainKind::half_line) return {half_line_start * s, 10.0 * s, kDefaultGridCount};
  return {-10.0 * s, 10.0 * s, kDefaultGridCount};
}

json level_json(const BoundState& l) {
  return {{"nu", l.nu}, {"E", l.E}, {"alpha", l.alpha}, {"beta", l.beta}, {"delta", l.delta},
          {"m", l.m},   {"p", l.p}, {"q", l.q}};
}

// ---------------------------------------------------------------------------

Output cmd_validate(const Options& opt) {
  if (opt.params.empty()) throw UsageError("--params is required");
  const auto mode = opt.scattering ? ValidationMode::scattering : ValidationMode::bound;
  const auto params = derive(parse_params(opt.params));
  const auto report = validate(params, mode);
  json doc = {{"params", params_json(params)},
              {"tau", params.tau},
              {"delta_disc", params.delta_disc},
              {"mode", to_string(mode)},
              {"domain", to_string(params.domain_kind())},
              {"ok", report.ok()},
              {"violations", report.violations}};
  if (!report) throw ValidationFailure(report);
  return {doc, std::nullopt};
}

Output cmd_map(const Options& opt) {
  const auto params = checked_params(opt, ValidationMode::bound);
  const ChangeOfVariable cov(params);
  const auto grid = grid_or(opt, default_r_grid(params, 0.0));
  Table table{{"r", "z", "dzdr"}, {}};
  json points = json::array();
  for (const double r : grid.points()) {
    const auto pt = cov.point_at(r);
    const double slope = cov.dz_dr(pt);
    table.rows.push_back({r, pt.z, slope});
    points.push_back({{"r", r}, {"z", pt.z}, {"dzdr", slope}});
  }
  json doc = {{"params", params_json(params)}, {"domain", to_string(params.domain_kind())}, {"points", points}};
  return {doc, table};
}

Output cmd_potential(const Options& opt) {
  const auto params = checked_params(opt, ValidationMode::bound);
  const PotentialInstance pot(params);
  const auto grid = grid_or(opt, default_r_grid(params, 0.01));
  Table table{{"r", "V"}, {}};
  json samples = json::array();
  for (const double r : grid.points()) {
    const double v = pot.v_of_r(r);
    table.rows.push_back({r, v});
    samples.push_back({{"r", r}, {"V", v}});
  }
  json doc = {{"params", params_json(params)},
              {"asymptotic_value", pot.asymptotic_value()},
              {"origin_coefficient", pot.origin_coefficient() ? json(*pot.origin_coefficient()) : json(nullptr)},
              {"samples", samples}};
  return {doc, table};
}

Output cmd_spectrum(const Options& opt) {
  const auto params = checked_params(opt, ValidationMode::bound);
  const auto levels = enumerate_levels(params);
  Table table{{"nu", "E", "alpha", "beta", "delta", "m", "p", "q"}, {}};
  json list = json::array();
  for (const auto& l : levels) {
    table.rows.push_back({double(l.nu), l.E, l.alpha, l.beta, l.delta, l.m, l.p, l.q});
    list.push_back(level_json(l));
  }
  json doc = {{"params", params_json(params)}, {"threshold", params.threshold()}, {"levels", list}};
  return {doc, table};
}

WeightMode parse_mode(const std::string& text) {
  if (text == "physical") return WeightMode::physical();
  if (text.rfind("fixed:", 0) == 0) return WeightMode::fixed(parse_number(text.substr(6), "--mode fixed:m"));
  throw UsageError(fmt::format("--mode must be 'physical' or 'fixed:<m>', got '{}'", text));
}

Output cmd_smatrix(const Options& opt, std::ostream& err) {
  const auto params = checked_params(opt, ValidationMode::scattering);
  const auto mode = parse_mode(opt.mode);
  const auto k_grid = grid_or(opt, {0.05, 5.0, kDefaultGridCount}).points();
  const auto result = phase_shift_grid(params, k_grid, mode);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  Table table{{"k", "m_used", "re_S", "im_S", "phase"}, {}};
  json points = json::array();
  for (const auto& pt : result.points) {
    table.rows.push_back({pt.k, pt.m.real(), pt.value.real(), pt.value.imag(), pt.phase});
    points.push_back({{"k", pt.k},
                      {"m_used", pt.m.real()},
                      {"m_used_imag", pt.m.imag()},
                      {"re_S", pt.value.real()},
                      {"im_S", pt.value.imag()},
                      {"phase", pt.phase}});
  }
  json doc = {{"params", params_json(params)},
              {"mode", mode.kind == WeightMode::Kind::physical ? "physical" : fmt::format("fixed:{}", mode.m)},
              {"warnings", result.warnings},
              {"points", points}};
  return {doc, table};
}

Output cmd_poles(const Options& opt) {
  const auto params = checked_params(opt, ValidationMode::scattering);
  if (opt.n_max < 0) throw UsageError("--n-max must be non-negative");
  const auto poles = find_poles(params, opt.n_max);
  Table table{{"n", "kappa", "E"}, {}};
  json list = json::array();
  for (const auto& pole : poles) {
    table.rows.push_back({double(pole.n), pole.kappa, pole.E});
    list.push_back({{"n", pole.n}, {"kappa", pole.kappa}, {"E", pole.E}});
  }
  json doc = {{"params", params_json(params)}, {"poles", list}};
  return {doc, table};
}

Output cmd_oracle_compare(const Options& opt) {
  const auto params = checked_params(opt, ValidationMode::scattering);
  if (params.domain_kind() != DomainKind::half_line)
    throw DomainError("oracle-compare handles half-line (c0 = 0) parameters only");
  if (!(opt.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  const PotentialInstance pot(params);
  const auto levels = enumerate_levels(params);
  OracleOptions options;
  options.tolerance = opt.tolerance;
  // One spare level so that a numeric level the algebra misses shows up.
  const auto numeric = bound_energies_numeric(pot, static_cast<int>(levels.size()) + 1, options);

  json rows = json::array();
  double worst = 0.0;
  const std::size_t n = std::max(levels.size(), numeric.energies.size());
  for (std::size_t i = 0; i < n; ++i) {
    json row = {{"nu", i}};
    row["E_algebraic"] = i < levels.size() ? json(levels[i].E) : json(nullptr);
    row["E_numeric"] = i < numeric.energies.size() ? json(numeric.energies[i]) : json(nullptr);
    if (i < levels.size() && i < numeric.energies.size()) {
      const double d = numeric.energies[i] - levels[i].E;
      worst = std::max(worst, std::abs(d));
      row["difference"] = d;
    } else {
      row["difference"] = nullptr;
    }
    rows.push_back(row);
  }
  json doc = {{"params", params_json(params)},
              {"levels", rows},
              {"level_count_match", levels.size() == numeric.energies.size()},
              {"max_abs_difference", worst},
              {"error_estimate", numeric.error_estimate},
              {"grid", grid_json(numeric.grid)}};

  if (!opt.grid.empty()) {
    const auto k_grid = parse_grid(opt.grid).points();
    const auto phases = phase_shifts_numeric(pot, k_grid, options);
    const auto algebraic = phase_shift_grid(params, k_grid, WeightMode::physical());
    json table = json::array();
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
      table.push_back({{"k", k_grid[i]},
                       {"delta_numeric", phases.phases[i].delta},
                       {"error_estimate", phases.phases[i].error_estimate},
                       {"arg_S_unit_delta", algebraic.points[i].phase}});
    }
    doc["phases"] = table;
    doc["levinson"] = {{"bound_states", levels.size()},
                       {"delta_first_minus_last_over_pi",
                        (phases.phases.front().delta - phases.phases.back().delta) / std::numbers::pi}};
  }
  return {doc, std::nullopt};
}

Output cmd_algebra_check(const Options& opt) {
  const auto params = checked_params(opt, ValidationMode::bound);
  const ChangeOfVariable cov(params);
  const auto levels = enumerate_levels(params);
  const double p = opt.p.value_or(levels.empty() ? 1.0 : levels.front().p);
  const double m = opt.m.value_or(levels.empty() ? 0.5 : levels.front().m);
  const auto tests = standard_test_functions(std::sqrt(params.c1));
  const auto window = standard_window(params);

  const auto closure = check_so21_closure(build_so21(params, p, m), cov, tests, window);
  json candidates = json::array();
  for (const auto& c : closure.casimir)
    candidates.push_back({{"form", c.label}, {"residual", c.residual}, {"passes", c.passes}});
  json doc = {{"params", params_json(params)},
              {"p", p},
              {"m", m},
              {"tolerance", kClosureTolerance},
              {"so21",
               {{"J0_Jplus", closure.j0_jplus},
                {"J0_Jminus", closure.j0_jminus},
                {"Jplus_Jminus", closure.jplus_jminus},
                {"backend_agreement", closure.backend_agreement},
                {"casimir_candidates", candidates},
                {"casimir_convention",
                 closure.casimir_winner ? json(closure.casimir[*closure.casimir_winner].label) : json(nullptr)}}},
              {"asymptotic_generators", check_asymptotic_generators(params, cov, p, m)}};

  if (!levels.empty()) {
    const auto& level = levels.front();
    const auto conn = check_connection(params, cov, level.p, level.m, level.E, level.q, tests, window);
    json trials = json::array();
    for (const auto& t : conn.trials) trials.push_back({{"m", t.m}, {"residual", t.residual}});
    json g = json::array();
    for (const auto& [r, value] : conn.g_samples) g.push_back({{"r", r}, {"G", value}});
    doc["connection"] = {{"nu", level.nu},  {"E", level.E},
                         {"q", level.q},    {"residual", conn.residual},
                         {"m_used", conn.m_used}, {"trials", trials},
                         {"g_formula_error", conn.g_formula_error}, {"G_samples", g}};
  } else {
    doc["connection"] = nullptr;
  }

  const auto k_values = opt.grid.empty() ? std::vector<double>{0.5, 1.0, 2.0} : parse_grid(opt.grid).points();
  json e2 = json::array();
  json expansion = json::array();
  for (const double k : k_values) {
    const auto r = check_e2(k, m);
    e2.push_back({{"k", k},
                  {"Px_Py", r.px_py},
                  {"factorization", r.factorization},
                  {"Lz_P", r.lz_p},
                  {"P_inf_action", r.p_inf_action},
                  {"P2_inf_action", r.p2_inf_action},
                  {"Lz_weight", r.lz_weight},
                  {"asymptotic_limit", r.asymptotic_limit}});
    if (validate(params, ValidationMode::scattering))
      expansion.push_back({{"k", k}, {"residual", check_euclidean_expansion(params, k, m)}});
  }
  doc["e2"] = e2;
  doc["euclidean_expansion"] = expansion;
  return {doc, std::nullopt};
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = i + 1 == count ? max : min + (max - min) * i / (count - 1);
  return out;
}

GridSpec parse_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    throw std::invalid_argument(fmt::format("--grid must be min:max:count, got '{}'", text));
  GridSpec g;
  g.min = parse_number(text.substr(0, first), "grid min");
  g.max = parse_number(text.substr(first + 1, second - first - 1), "grid max");
  const double count = parse_number(text.substr(second + 1), "grid count");
  if (count != std::floor(count) || count < 2 || count > 1e7)
    throw std::invalid_argument("grid count must be an integer >= 2");
  g.count = static_cast<int>(count);
  if (!(g.min < g.max)) throw std::invalid_argument("grid needs min < max");
  return g;
}

RawParams parse_params(std::string_view text) {
  std::string source(text);
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(std::string(text.substr(1)));
    if (!in) throw std::invalid_argument(fmt::format("cannot read params file '{}'", text.substr(1)));
    std::stringstream buffer;
    buffer << in.rdbuf();
    source = buffer.str();
  }
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(fmt::format("params are not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw std::invalid_argument("params must be a JSON object");
  RawParams raw;
  const std::vector<std::pair<const char*, double*>> fields = {{"f", &raw.f},   {"h0", &raw.h0}, {"h1", &raw.h1},
                                                               {"a", &raw.a},   {"c0", &raw.c0}, {"c1", &raw.c1}};
  for (const auto& [key, value] : doc.items()) {
    const bool known = std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return key == f.first; });
    if (!known) throw std::invalid_argument(fmt::format("unknown params key '{}'", key));
  }
  for (const auto& [key, slot] : fields) {
    if (!doc.contains(key)) throw std::invalid_argument(fmt::format("params key '{}' is missing", key));
    if (!doc[key].is_number()) throw std::invalid_argument(fmt::format("params key '{}' must be a number", key));
    *slot = doc[key].get<double>();
  }
  return raw;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Natanzon potential workbench: spectra, S-matrix, oracle and algebra checks", "natanzon"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_grid) {
    sub->add_option("--params", opt.params, "parameters as JSON or @file")->required();
    if (with_grid) sub->add_option("--grid", opt.grid, "grid as min:max:count");
    sub->add_option("--out", opt.out, "output path (default: standard output)");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "check parameter constraints");
  add_common(validate_cmd, false);
  validate_cmd->add_flag("--scattering", opt.scattering, "also require h1 = -1");
  auto* map_cmd = app.add_subcommand("map", "tabulate z(r) and dz/dr");
  add_common(map_cmd, true);
  auto* potential_cmd = app.add_subcommand("potential", "tabulate V(r)");
  add_common(potential_cmd, true);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "bound levels from the quantization condition");
  add_common(spectrum_cmd, false);
  auto* smatrix_cmd = app.add_subcommand("smatrix", "S-matrix over a k grid");
  add_common(smatrix_cmd, true);
  smatrix_cmd->add_option("--mode", opt.mode, "physical or fixed:<m>");
  auto* poles_cmd = app.add_subcommand("poles", "bound-state poles of the S-matrix");
  add_common(poles_cmd, false);
  poles_cmd->add_option("--n-max", opt.n_max, "largest pole index searched");
  auto* oracle_cmd = app.add_subcommand("oracle-compare", "algebraic vs Numerov levels and phases");
  add_common(oracle_cmd, true);
  oracle_cmd->add_option("--tolerance", opt.tolerance, "step-halving tolerance");
  auto* algebra_cmd = app.add_subcommand("algebra-check", "operator algebra residuals");
  add_common(algebra_cmd, true);
  algebra_cmd->add_option("--p", opt.p, "realization parameter p");
  algebra_cmd->add_option("--m", opt.m, "weight m");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    Output output;
    if (validate_cmd->parsed()) output = cmd_validate(opt);
    else if (map_cmd->parsed()) output = cmd_map(opt);
    else if (potential_cmd->parsed()) output = cmd_potential(opt);
    else if (spectrum_cmd->parsed()) output = cmd_spectrum(opt);
    else if (smatrix_cmd->parsed()) output = cmd_smatrix(opt, err);
    else if (poles_cmd->parsed()) output = cmd_poles(opt);
    else if (oracle_cmd->parsed()) output = cmd_oracle_compare(opt);
    else output = cmd_algebra_check(opt);

    std::ostringstream text;
    if (opt.format == "csv") {
      if (!output.table) throw UsageError("this subcommand has no CSV form; use --format json");
      write_csv(text, *output.table);
    } else {
      text << output.document.dump(2) << '\n';
    }
    if (opt.out.empty()) {
      out << text.str();
    } else {
      std::ofstream file(opt.out);
      if (!file) throw UsageError(fmt::format("cannot write '{}'", opt.out));
      file << text.str();
    }
    return ok;
  } catch (const ValidationFailure& e) {
    for (const auto& v : e.report.violations) err << "invalid: " << v << '\n';
    return validation_failure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const NumericalDiagnostic& e) {
    err << "diagnostic: " << e.what() << '\n';
    return numerical_diagnostic;
  } catch (const DomainError& e) {
    err << "invalid: " << e.what() << '\n';
    return validation_failure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace natanzon::cli
