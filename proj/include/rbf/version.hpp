#pragma once

namespace rbf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rbf
