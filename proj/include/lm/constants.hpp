#pragma once

#include <numbers>

namespace lm::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double ln2 = std::numbers::ln2;
inline constexpr double zeta3 = 1.2020569031595942854;
inline constexpr double zeta5 = 1.0369277551433699263;

} // namespace lm::constants
