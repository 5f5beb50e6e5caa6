#pragma once

namespace gridsight {

/// Routes spdlog to stderr at the level named by GRIDSIGHT_LOG (error|warn|info|debug, default warn).
void configure_logging();

}  // namespace gridsight
