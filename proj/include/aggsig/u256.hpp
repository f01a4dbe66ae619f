// Copyright 2026 The aggsig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace aggsig {

/// Fixed 256-bit unsigned integer, four little-endian 64-bit limbs.
///
/// Used for signer-vector counters and scalars. Arithmetic beyond
/// comparison and modular addition lives in the crypto backends.
struct U256 {
    std::array<std::uint64_t, 4> limbs{};

    constexpr U256() = default;
    constexpr U256(std::uint64_t low) : limbs{low, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
    constexpr U256(std::uint64_t l0, std::uint64_t l1, std::uint64_t l2, std::uint64_t l3)
        : limbs{l0, l1, l2, l3} {}

    [[nodiscard]] constexpr bool is_zero() const {
        return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) == 0;
    }
    [[nodiscard]] constexpr bool fits_u64() const {
        return (limbs[1] | limbs[2] | limbs[3]) == 0;
    }
    [[nodiscard]] unsigned bit_length() const;

    /// Parses hexadecimal digits, optional "0x" prefix. Throws std::invalid_argument.
    static U256 from_hex(std::string_view hex);
    [[nodiscard]] std::string to_hex() const;
    [[nodiscard]] std::string to_decimal() const;

    /// 32-byte big-endian encoding.
    [[nodiscard]] std::array<std::uint8_t, 32> to_be_bytes() const;
    static U256 from_be_bytes(std::span<const std::uint8_t> bytes);

    friend constexpr bool operator==(const U256&, const U256&) = default;
    friend constexpr std::strong_ordering operator<=>(const U256& a, const U256& b) {
        for (int i = 3; i >= 0; --i) {
            if (a.limbs[i] != b.limbs[i]) return a.limbs[i] <=> b.limbs[i];
        }
        return std::strong_ordering::equal;
    }
};

/// (a + b) mod p for a, b < p. Sets *wrapped when a reduction happened.
U256 add_mod(const U256& a, const U256& b, const U256& p, bool* wrapped = nullptr);

/// a * k for a small multiplier, mod p. Requires a < p.
U256 mul_small_mod(const U256& a, std::uint64_t k, const U256& p);

}  // namespace aggsig
