#pragma once

namespace lagsweep {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lagsweep
