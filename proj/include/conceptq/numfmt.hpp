#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace conceptq {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Whole-string parse; nullopt on trailing garbage, empty input or non-finite results.
std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text);

} // namespace conceptq
