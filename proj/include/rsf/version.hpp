#pragma once

namespace rsf {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rsf
