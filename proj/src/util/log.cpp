#include "kgsec/util/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>

namespace kgsec::log {

spdlog::logger& get() {
    static std::shared_ptr<spdlog::logger> logger = [] {
        auto l = spdlog::stderr_color_mt("kgsec");
        l->set_pattern("[%l] %v");
        l->set_level(spdlog::level::warn);
        return l;
    }();
    return *logger;
}

void set_level(spdlog::level::level_enum level) { get().set_level(level); }

}  // namespace kgsec::log
