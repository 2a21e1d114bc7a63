#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace debcheck::text {

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Replaces every ill-formed UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

// Splits on '\n'; a trailing '\r' is removed from each line.
std::vector<std::string_view> split_lines(std::string_view s);

} // namespace debcheck::text
