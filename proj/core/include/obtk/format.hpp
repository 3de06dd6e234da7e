#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace obtk {

/// Shortest decimal form that parses back to the same double.
std::string format_exact(double v);

/// Fixed 9-significant-digit form used in CSV output.
std::string format_csv(double v);

/// Parses a full token as a double; throws ValidationError naming the token.
double parse_number(std::string_view token);

/// Splits on `sep` at parenthesis depth zero. A '+' that is the sign of a
/// floating-point exponent ("1e+05") is never treated as a separator.
std::vector<std::string> split_top_level(std::string_view s, char sep);

/// Removes one pair of enclosing parentheses if they wrap the whole string.
std::string_view strip_parens(std::string_view s);

std::string_view trim(std::string_view s);

/// Quotes a table cell when it contains the separator, a quote or a newline.
std::string quote_cell(const std::string& s, char sep);

}  // namespace obtk
