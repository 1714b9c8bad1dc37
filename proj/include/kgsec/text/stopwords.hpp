#pragma once

#include <set>
#include <string>

namespace kgsec::text {

/// Bundled English stop-word list (lowercase).
const std::set<std::string, std::less<>>& english_stopwords();

}  // namespace kgsec::text
