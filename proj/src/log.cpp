#include "gridsight/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace gridsight {

void configure_logging() {
  static const auto logger = [] {
    auto l = spdlog::stderr_color_mt("gridsight");
    spdlog::set_default_logger(l);
    return l;
  }();
  const char* env = std::getenv("GRIDSIGHT_LOG");
  const std::string_view level = env ? env : "warn";
  if (level == "error") logger->set_level(spdlog::level::err);
  else if (level == "info") logger->set_level(spdlog::level::info);
  else if (level == "debug") logger->set_level(spdlog::level::debug);
  else logger->set_level(spdlog::level::warn);
}

}  // namespace gridsight
