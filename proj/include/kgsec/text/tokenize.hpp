#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgsec::text {

/// Splits on whitespace, '=' and ',' and strips wrapping quotes, backticks,
/// brackets and trailing punctuation. Internal '-', '.', '_' and leading
/// dashes survive untouched, as does case.
std::vector<std::string> tokenize_preserving(std::string_view text);

std::string_view trim(std::string_view text);
std::string to_lower(std::string_view text);
std::vector<std::string> split_whitespace(std::string_view text);

}  // namespace kgsec::text
