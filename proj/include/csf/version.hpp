#pragma once

namespace csf {

inline constexpr const char* kVersion = "0.1.0";

} // namespace csf
