#include "log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>

namespace moikit::cli {

namespace {

spdlog::level::level_enum level_from_env() {
  const char* value = std::getenv("MOIKIT_LOG");
  if (value == nullptr) return spdlog::level::warn;
  const std::string name(value);
  if (name == "error") return spdlog::level::err;
  if (name == "warn") return spdlog::level::warn;
  if (name == "info") return spdlog::level::info;
  if (name == "debug") return spdlog::level::debug;
  return spdlog::level::warn;
}

}  // namespace

spdlog::logger& logger() {
  static const auto instance = [] {
    auto l = std::make_shared<spdlog::logger>("moikit", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("moikit [%l] %v");
    return l;
  }();
  instance->set_level(level_from_env());
  return *instance;
}

}  // namespace moikit::cli
