#pragma once

namespace beliefdyn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace beliefdyn
