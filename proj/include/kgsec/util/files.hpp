#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>

namespace kgsec::util {

/// Whole-file read; throws IoError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes atomically via a sibling temporary file; throws IoError.
void write_file(const std::filesystem::path& path, std::string_view contents);

/// 1-based (line, column) of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

}  // namespace kgsec::util
