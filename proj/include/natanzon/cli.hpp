#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "natanzon/params.hpp"

namespace natanzon::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, numerical_diagnostic = 2, usage_error = 3 };

/// Uniform grid min:max:count, count >= 2 and min < max.
struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  std::vector<double> points() const;
};

/// Parses "min:max:count"; throws std::invalid_argument.
GridSpec parse_grid(std::string_view text);

/// Parses a params object {"f", "h0", "h1", "a", "c0", "c1"}, inline or as
/// "@path". All six keys are required and no others are accepted; throws
/// std::invalid_argument.
RawParams parse_params(std::string_view text);

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace natanzon::cli
