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

#include "kernels_internal.hpp"

namespace aggsig::simd::detail {

std::size_t add_mod_scalar(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n,
                           const std::uint64_t* p) {
    std::size_t wrapped = 0;
    for (std::size_t u = 0; u < n; ++u) {
        std::uint64_t s[4];
        unsigned char carry = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            unsigned __int128 t =
                static_cast<unsigned __int128>(acc[k * n + u]) + rhs[k * n + u] + carry;
            s[k] = static_cast<std::uint64_t>(t);
            carry = static_cast<unsigned char>(t >> 64);
        }
        bool geq = carry != 0;
        if (!geq) {
            geq = true;
            for (int k = 3; k >= 0; --k) {
                if (s[k] != p[k]) {
                    geq = s[k] > p[k];
                    break;
                }
            }
        }
        if (geq) {
            unsigned char borrow = 0;
            for (std::size_t k = 0; k < 4; ++k) {
                unsigned __int128 t = static_cast<unsigned __int128>(s[k]) - p[k] - borrow;
                s[k] = static_cast<std::uint64_t>(t);
                borrow = static_cast<unsigned char>((t >> 64) & 1);
            }
            ++wrapped;
        }
        for (std::size_t k = 0; k < 4; ++k) acc[k * n + u] = s[k];
    }
    return wrapped;
}

std::size_t add_u64_scalar(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n) {
    std::size_t carries = 0;
    for (std::size_t u = 0; u < n; ++u) {
        std::uint64_t s = acc[u] + rhs[u];
        carries += s < rhs[u] ? 1 : 0;
        acc[u] = s;
    }
    return carries;
}

std::size_t count_nonzero_scalar(const std::uint64_t* limbs, std::size_t n, std::size_t planes) {
    std::size_t count = 0;
    for (std::size_t u = 0; u < n; ++u) {
        std::uint64_t any = 0;
        for (std::size_t k = 0; k < planes; ++k) any |= limbs[k * n + u];
        if (any != 0) ++count;
    }
    return count;
}

bool any_nonzero_scalar(const std::uint64_t* words, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        if (words[i] != 0) return true;
    }
    return false;
}

std::uint64_t max_u64_scalar(const std::uint64_t* words, std::size_t count) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < count; ++i) m = words[i] > m ? words[i] : m;
    return m;
}

}  // namespace aggsig::simd::detail
