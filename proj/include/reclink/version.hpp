#pragma once

namespace reclink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace reclink
