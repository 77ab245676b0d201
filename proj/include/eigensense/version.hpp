#pragma once

namespace eigensense {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace eigensense
