#pragma once

namespace bsmimo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bsmimo
