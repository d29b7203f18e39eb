#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace loewner {

inline constexpr std::string_view library_version = "1.0.0";

// Per-module versions recorded in every output file.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 6> module_versions{{
    {"geometry", "1.0.0"},
    {"conformal", "1.0.0"},
    {"quadrature", "1.0.0"},
    {"energy", "1.0.0"},
    {"frames", "1.0.0"},
    {"cli", "1.0.0"},
}};

}  // namespace loewner
