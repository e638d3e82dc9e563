#pragma once

namespace d2dmm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace d2dmm
