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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "kernels_internal.hpp"

namespace aggsig::simd::detail {

namespace {

inline __m256i sign_flip(__m256i v) {
    return _mm256_xor_si256(v, _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL)));
}

// Lane mask: a < b as unsigned 64-bit.
inline __m256i lt_u64(__m256i a, __m256i b) {
    return _mm256_cmpgt_epi64(sign_flip(b), sign_flip(a));
}

inline void add_mod_one(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n,
                        std::size_t u, const std::uint64_t* p, std::size_t& wrapped) {
    std::uint64_t s[4];
    unsigned char carry = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        unsigned __int128 t = static_cast<unsigned __int128>(acc[k * n + u]) + rhs[k * n + u] + carry;
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

}  // namespace

std::size_t add_mod_avx2(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n,
                         const std::uint64_t* p) {
    const __m256i zero = _mm256_setzero_si256();
    const __m256i ones = _mm256_set1_epi64x(-1);
    __m256i pv[4];
    for (int k = 0; k < 4; ++k) pv[k] = _mm256_set1_epi64x(static_cast<long long>(p[k]));

    std::size_t wrapped = 0;
    std::size_t u = 0;
    for (; u + 4 <= n; u += 4) {
        __m256i s[4];
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + u));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rhs + u));
        s[0] = _mm256_add_epi64(a, b);
        __m256i carry = lt_u64(s[0], a);
        for (std::size_t k = 1; k < 4; ++k) {
            a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + k * n + u));
            b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rhs + k * n + u));
            __m256i t = _mm256_add_epi64(a, b);
            __m256i c1 = lt_u64(t, a);
            t = _mm256_sub_epi64(t, carry);  // carry mask is -1 where set
            __m256i c2 = _mm256_and_si256(carry, _mm256_cmpeq_epi64(t, zero));
            carry = _mm256_or_si256(c1, c2);
            s[k] = t;
        }

        __m256i d[4];
        d[0] = _mm256_sub_epi64(s[0], pv[0]);
        __m256i borrow = lt_u64(s[0], pv[0]);
        for (std::size_t k = 1; k < 4; ++k) {
            __m256i t = _mm256_sub_epi64(s[k], pv[k]);
            __m256i b1 = lt_u64(s[k], pv[k]);
            __m256i b2 = _mm256_and_si256(borrow, _mm256_cmpeq_epi64(t, zero));
            d[k] = _mm256_add_epi64(t, borrow);
            borrow = _mm256_or_si256(b1, b2);
        }
        __m256i geq = _mm256_or_si256(carry, _mm256_xor_si256(borrow, ones));
        wrapped += static_cast<std::size_t>(
            std::popcount(static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(geq)))));
        for (std::size_t k = 0; k < 4; ++k) {
            __m256i r = _mm256_blendv_epi8(s[k], d[k], geq);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + k * n + u), r);
        }
    }
    for (; u < n; ++u) add_mod_one(acc, rhs, n, u, p, wrapped);
    return wrapped;
}

std::size_t add_u64_avx2(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n) {
    std::size_t carries = 0;
    std::size_t u = 0;
    for (; u + 4 <= n; u += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + u));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rhs + u));
        __m256i s = _mm256_add_epi64(a, b);
        int mask = _mm256_movemask_pd(_mm256_castsi256_pd(lt_u64(s, b)));
        carries += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + u), s);
    }
    for (; u < n; ++u) {
        std::uint64_t s = acc[u] + rhs[u];
        carries += s < rhs[u] ? 1 : 0;
        acc[u] = s;
    }
    return carries;
}

std::size_t count_nonzero_avx2(const std::uint64_t* limbs, std::size_t n, std::size_t planes) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t zeros = 0;
    std::size_t u = 0;
    for (; u + 4 <= n; u += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(limbs + u));
        for (std::size_t k = 1; k < planes; ++k) {
            v = _mm256_or_si256(
                v, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(limbs + k * n + u)));
        }
        int mask = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(v, zero)));
        zeros += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
    }
    std::size_t count = (u - zeros);
    for (; u < n; ++u) {
        std::uint64_t any = 0;
        for (std::size_t k = 0; k < planes; ++k) any |= limbs[k * n + u];
        if (any != 0) ++count;
    }
    return count;
}

bool any_nonzero_avx2(const std::uint64_t* words, std::size_t count) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        acc = _mm256_or_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i)));
    }
    if (!_mm256_testz_si256(acc, acc)) return true;
    for (; i < count; ++i) {
        if (words[i] != 0) return true;
    }
    return false;
}

std::uint64_t max_u64_avx2(const std::uint64_t* words, std::size_t count) {
    __m256i best = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
        best = _mm256_blendv_epi8(best, v, lt_u64(best, v));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
    std::uint64_t m = 0;
    for (auto lane : lanes) m = lane > m ? lane : m;
    for (; i < count; ++i) m = words[i] > m ? words[i] : m;
    return m;
}

}  // namespace aggsig::simd::detail
