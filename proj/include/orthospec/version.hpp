#pragma once

namespace orthospec {

inline constexpr const char* tool_name = "orthospec";
inline constexpr const char* tool_version = "0.1.0";

}  // namespace orthospec
