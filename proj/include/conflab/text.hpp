#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace conflab::text {

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);
/// Strict full-string parse; throws ValidationError naming `what`.
double parse_double(std::string_view s, std::string_view what = "number");
long long parse_int(std::string_view s, std::string_view what = "integer");

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace conflab::text
