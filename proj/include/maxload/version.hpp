#pragma once

namespace maxload {

inline constexpr const char* kToolName = "maxload";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace maxload
