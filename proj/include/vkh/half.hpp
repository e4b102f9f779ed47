#pragma once

#include <string>

namespace vkh {

// Half-integers are stored doubled: 3 means 3/2, -2 means -1.

inline bool is_integral_half(int doubled) { return doubled % 2 == 0; }

inline std::string format_half(int doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

// Floor-style modulus, always in [0, m).
inline int mod(int a, int m) { return ((a % m) + m) % m; }

} // namespace vkh
