#include "log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace catconv::detail {

spdlog::logger& log() {
  static const std::shared_ptr<spdlog::logger> logger = [] {
    auto l = spdlog::stderr_color_st("catconv");
    l->set_pattern("[%l] %v");
    const char* env = std::getenv("GC_LOG");
    const std::string_view level = env ? env : "";
    if (level == "debug") l->set_level(spdlog::level::debug);
    else if (level == "info") l->set_level(spdlog::level::info);
    else if (level == "error") l->set_level(spdlog::level::err);
    else if (level == "off") l->set_level(spdlog::level::off);
    else l->set_level(spdlog::level::warn);
    return l;
  }();
  return *logger;
}

}  // namespace catconv::detail
