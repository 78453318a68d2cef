#pragma once

#include <spdlog/logger.h>

namespace catconv::detail {

/// Library logger on stderr. Level comes from GC_LOG (debug | info | error | off); warnings otherwise.
spdlog::logger& log();

}  // namespace catconv::detail
