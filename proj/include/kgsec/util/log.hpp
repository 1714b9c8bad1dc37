#pragma once

#include <spdlog/spdlog.h>

namespace kgsec::log {

/// Shared stderr logger; machine output never goes through it.
spdlog::logger& get();

template <typename... Args>
void warn(fmt::format_string<Args...> fmt, Args&&... args) {
    get().warn(fmt, std::forward<Args>(args)...);
}

template <typename... Args>
void info(fmt::format_string<Args...> fmt, Args&&... args) {
    get().info(fmt, std::forward<Args>(args)...);
}

void set_level(spdlog::level::level_enum level);

}  // namespace kgsec::log
