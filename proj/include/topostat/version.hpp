#pragma once

namespace topostat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace topostat
