#pragma once

#include <spdlog/spdlog.h>

namespace moikit::cli {

/// Logger on stderr; level from MOIKIT_LOG (error, warn, info, debug), default warn.
spdlog::logger& logger();

}  // namespace moikit::cli
