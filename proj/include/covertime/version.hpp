#pragma once

namespace covertime {

inline constexpr const char* kVersion = "0.1.0";

} // namespace covertime
