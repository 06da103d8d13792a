#pragma once

namespace kato {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kato
