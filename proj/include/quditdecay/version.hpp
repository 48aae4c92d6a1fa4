#pragma once

namespace qd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qd
