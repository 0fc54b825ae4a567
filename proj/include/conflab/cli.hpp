#pragma once

// Batch experiment runner: conflab <project|apchar|range|normscan|diffspec|checks>.
//
// Universal flags: --seed, --out (output directory, default $CONFLAB_OUT_DIR),
// --config (key=value file; keys are long flag names, flags win).
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conflab/weights.hpp"

namespace conflab::cli {

/// Weight descriptions accepted by apchar and normscan:
///   power:a=A[,p=P][,center=C][,domain=circle|line][,scale=S]
///   pullback:map=NAME,s=S[,p=P]
///   example[:p=P]   (the pullback model of the example domain)
struct WeightQuery {
  std::string kind;              // power, pullback, example
  std::optional<double> p;
  double a = 0.0;
  double center = 0.0;
  double scale = 1.0;
  WeightDomain domain = WeightDomain::circle;
  std::string map;
  double s = 0.0;
  std::string text;
};
WeightQuery parse_weight_query(const std::string& text);

/// "(lo, hi)" with shortest round-trip numbers.
std::string format_range(const Range& r);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conflab::cli
