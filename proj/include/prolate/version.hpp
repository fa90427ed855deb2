#pragma once

namespace prolate {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kGenerator = "prolate-quad";

}  // namespace prolate
