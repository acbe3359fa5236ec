#pragma once

namespace frechet {

inline constexpr const char* version() { return "0.1.0"; }

}  // namespace frechet
