#pragma once

namespace sfq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sfq
