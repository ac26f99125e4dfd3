#pragma once

#include <string_view>

namespace thompson {

inline constexpr std::string_view kArtifactName = "thompson-explorer";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace thompson
