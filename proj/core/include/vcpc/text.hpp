#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vcpc {

/// Shortest decimal form that parses back to the identical double.
std::string format_number(double value);

/// Strict parse of a whole token; throws ParseError on trailing junk.
double parse_double(std::string_view token);
long long parse_int(std::string_view token);

/// Splits on runs of whitespace.
std::vector<std::string_view> split_ws(std::string_view line);

/// Splits on a single delimiter, trimming whitespace around each piece.
std::vector<std::string> split_list(std::string_view text, char delim = ',');

std::string_view trim(std::string_view s);

}  // namespace vcpc
