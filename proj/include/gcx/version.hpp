#pragma once

namespace gcx {
inline constexpr const char* kEngineVersion = "gcx 0.1.0";
}
