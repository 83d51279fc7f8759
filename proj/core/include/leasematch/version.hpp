#pragma once

namespace leasematch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace leasematch
