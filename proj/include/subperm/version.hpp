#pragma once

namespace subperm {

inline constexpr const char* version = "1.0.0";

} // namespace subperm
