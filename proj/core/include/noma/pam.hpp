#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace noma {

/// Amplitude 2i - (M-1) of level i in the M-PAM alphabet {+-1, +-3, ...}.
/// M = 1 yields the single silent level 0.
constexpr int pam_amplitude(int index, int m) noexcept { return 2 * index - (m - 1); }

/// Inverse of pam_amplitude.
constexpr int pam_index(int amplitude, int m) noexcept { return (amplitude + m - 1) / 2; }

inline std::vector<int> pam_alphabet(int m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out.push_back(pam_amplitude(i, m));
    return out;
}

constexpr std::uint32_t gray_encode(std::uint32_t i) noexcept { return i ^ (i >> 1); }

constexpr std::uint32_t gray_decode(std::uint32_t g) noexcept {
    for (std::uint32_t shift = 1; shift < 32; shift <<= 1) g ^= g >> shift;
    return g;
}

constexpr bool is_power_of_two(std::int64_t v) noexcept {
    return v > 0 && std::has_single_bit(static_cast<std::uint64_t>(v));
}

/// log2(M) for a power of two; 0 for a silent user.
constexpr int bits_per_level(int m) noexcept {
    return std::countr_zero(static_cast<std::uint32_t>(m));
}

}  // namespace noma
