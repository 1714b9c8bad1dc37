#pragma once

#include <string>
#include <string_view>

namespace kgsec::text {

/// Porter (1980) suffix stripping. Expects a lowercase ASCII word; words of
/// length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace kgsec::text
