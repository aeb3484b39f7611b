#pragma once

#include <string>

namespace leadership {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Inverse of format_double; throws std::invalid_argument on malformed text.
double parse_double(const std::string& text);

}  // namespace leadership
