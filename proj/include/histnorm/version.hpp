#pragma once

namespace histnorm {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace histnorm
