#pragma once

#include <string>
#include <vector>

#include "delone/geometry.hpp"

namespace delone {

/// Decimal with the given number of significant digits (printf %.Ng).
std::string format_sig(double value, int digits = 17);
std::string format_point(const Point& p, int digits = 17, char sep = ' ');

/// Splits on any of the separator characters, dropping empty pieces.
std::vector<std::string> split(const std::string& s, const std::string& seps);
std::string trim(const std::string& s);
/// Strict double parse; throws Parse.
double parse_double(const std::string& s);

}  // namespace delone
