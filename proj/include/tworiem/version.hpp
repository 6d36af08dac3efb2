#pragma once

namespace tworiem {
inline constexpr const char* kVersion = "0.1.0";
}
