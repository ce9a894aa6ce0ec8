#pragma once

namespace tailwave {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kReportSchema = "tailwave/1";

}  // namespace tailwave
