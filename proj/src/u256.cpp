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

#include "aggsig/u256.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace aggsig {

unsigned U256::bit_length() const {
    for (int i = 3; i >= 0; --i) {
        if (limbs[i] != 0) return static_cast<unsigned>(64 * i + std::bit_width(limbs[i]));
    }
    return 0;
}

U256 U256::from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty()) throw std::invalid_argument("empty hex string");
    U256 out;
    unsigned shift = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, shift += 4) {
        char ch = *it;
        std::uint64_t nibble = 0;
        if (ch >= '0' && ch <= '9') {
            nibble = static_cast<std::uint64_t>(ch - '0');
        } else if (ch >= 'a' && ch <= 'f') {
            nibble = static_cast<std::uint64_t>(ch - 'a' + 10);
        } else if (ch >= 'A' && ch <= 'F') {
            nibble = static_cast<std::uint64_t>(ch - 'A' + 10);
        } else {
            throw std::invalid_argument("invalid hex digit");
        }
        if (shift >= 256) {
            if (nibble != 0) throw std::invalid_argument("hex value exceeds 256 bits");
            continue;
        }
        out.limbs[shift / 64] |= nibble << (shift % 64);
    }
    return out;
}

std::string U256::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    for (int i = 255; i >= 0; i -= 4) {
        unsigned nibble = static_cast<unsigned>((limbs[i / 64] >> (i % 64 - 3)) & 0xf);
        if (s.empty() && nibble == 0) continue;
        s.push_back(kDigits[nibble]);
    }
    return s.empty() ? "0" : s;
}

std::string U256::to_decimal() const {
    if (is_zero()) return "0";
    U256 v = *this;
    std::string s;
    while (!v.is_zero()) {
        // long division by 10, most significant limb first
        unsigned __int128 rem = 0;
        for (int i = 3; i >= 0; --i) {
            unsigned __int128 cur = (rem << 64) | v.limbs[i];
            v.limbs[i] = static_cast<std::uint64_t>(cur / 10);
            rem = cur % 10;
        }
        s.push_back(static_cast<char>('0' + static_cast<int>(rem)));
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::array<std::uint8_t, 32> U256::to_be_bytes() const {
    std::array<std::uint8_t, 32> out{};
    for (std::size_t i = 0; i < 32; ++i) {
        out[31 - i] = static_cast<std::uint8_t>(limbs[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

U256 U256::from_be_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() > 32) throw std::invalid_argument("more than 32 bytes");
    U256 out;
    std::size_t n = bytes.size();
    for (std::size_t i = 0; i < n; ++i) {
        out.limbs[i / 8] |= static_cast<std::uint64_t>(bytes[n - 1 - i]) << (8 * (i % 8));
    }
    return out;
}

U256 add_mod(const U256& a, const U256& b, const U256& p, bool* wrapped) {
    U256 sum;
    unsigned char carry = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 t = static_cast<unsigned __int128>(a.limbs[i]) + b.limbs[i] + carry;
        sum.limbs[i] = static_cast<std::uint64_t>(t);
        carry = static_cast<unsigned char>(t >> 64);
    }
    bool reduce = carry != 0 || sum >= p;
    if (reduce) {
        unsigned char borrow = 0;
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 t = static_cast<unsigned __int128>(sum.limbs[i]) - p.limbs[i] - borrow;
            sum.limbs[i] = static_cast<std::uint64_t>(t);
            borrow = static_cast<unsigned char>((t >> 64) & 1);
        }
    }
    if (wrapped) *wrapped = reduce;
    return sum;
}

U256 mul_small_mod(const U256& a, std::uint64_t k, const U256& p) {
    U256 acc;
    U256 base = a;
    while (k != 0) {
        if (k & 1) acc = add_mod(acc, base, p);
        base = add_mod(base, base, p);
        k >>= 1;
    }
    return acc;
}

}  // namespace aggsig
