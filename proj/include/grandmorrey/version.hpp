#pragma once

namespace grandmorrey {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace grandmorrey
