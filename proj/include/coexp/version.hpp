#pragma once

namespace coexp {

inline constexpr const char* kVersion = "0.1.0";

}
