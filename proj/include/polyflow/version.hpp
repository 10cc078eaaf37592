#pragma once

namespace polyflow {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace polyflow
