#pragma once

namespace ssns {
inline constexpr const char* version = "0.1.0";
}
