#pragma once

#include <cstdint>

namespace recomp {

/// All decompressed lengths, weights and occurrence counts saturate here.
/// Values at the cap mean "at least this much"; arithmetic never wraps.
inline constexpr std::uint64_t kMaxLen = UINT64_C(9223372036854775807);

constexpr bool is_saturated(std::uint64_t v) { return v >= kMaxLen; }

constexpr std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    if (a >= kMaxLen || b >= kMaxLen || a > kMaxLen - b) return kMaxLen;
    return a + b;
}

constexpr std::uint64_t sat_sub(std::uint64_t a, std::uint64_t b) {
    if (is_saturated(a)) return a;  // "at least kMaxLen" absorbs subtraction
    return a > b ? a - b : 0;
}

constexpr std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a >= kMaxLen || b >= kMaxLen || a > kMaxLen / b) return kMaxLen;
    return a * b;
}

}  // namespace recomp
