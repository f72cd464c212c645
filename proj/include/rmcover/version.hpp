#pragma once

namespace rmcover {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rmcover
