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

#include <gtest/gtest.h>

#include <random>

#include "aggsig/crypto/scheme.hpp"
#include "aggsig/u256.hpp"

namespace aggsig {
namespace {

TEST(U256, HexRoundTrip) {
    U256 v = U256::from_hex("0x1234567890abcdef00000000000000010000000000000002");
    EXPECT_EQ(v.limbs[0], 2u);
    EXPECT_EQ(v.limbs[1], 1u);
    EXPECT_EQ(v.limbs[2], 0x1234567890abcdefULL);
    EXPECT_EQ(U256::from_hex(v.to_hex()), v);
    EXPECT_THROW(U256::from_hex("xyz"), std::invalid_argument);
}

TEST(U256, DecimalAndBitLength) {
    EXPECT_EQ(U256(0).to_decimal(), "0");
    EXPECT_EQ(U256(1234567).to_decimal(), "1234567");
    EXPECT_EQ(U256(0, 1, 0, 0).to_decimal(), "18446744073709551616");
    EXPECT_EQ(U256(0).bit_length(), 0u);
    EXPECT_EQ(U256(1).bit_length(), 1u);
    EXPECT_EQ(U256(0, 0, 0, 1ULL << 63).bit_length(), 256u);
}

TEST(U256, Ordering) {
    EXPECT_LT(U256(5), U256(0, 1, 0, 0));
    EXPECT_GT(U256(0, 0, 1, 0), U256(~0ULL, ~0ULL, 0, 0));
    EXPECT_EQ(U256(7), U256(7, 0, 0, 0));
}

TEST(U256, BigEndianBytes) {
    U256 v(0x0102030405060708ULL, 0, 0, 0xaa00000000000000ULL);
    auto b = v.to_be_bytes();
    EXPECT_EQ(b[0], 0xaa);
    EXPECT_EQ(b[31], 0x08);
    EXPECT_EQ(U256::from_be_bytes(b), v);
}

TEST(U256, AddModAgainstGmp) {
    const U256& p = crypto::group_order();
    const mpz_class pm = crypto::to_mpz(p);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        U256 a = crypto::random_scalar(rng);
        U256 b = i % 3 == 0 ? U256(rng() % 5) : crypto::random_scalar(rng);
        bool wrapped = false;
        U256 s = add_mod(a, b, p, &wrapped);
        mpz_class sum = crypto::to_mpz(a) + crypto::to_mpz(b);
        EXPECT_EQ(wrapped, sum >= pm);
        mpz_class expect = sum % pm;
        EXPECT_EQ(s, crypto::from_mpz(expect));
        std::uint64_t k = rng() % 100000;
        mpz_class prod = (crypto::to_mpz(a) * static_cast<unsigned long>(k)) % pm;
        EXPECT_EQ(mul_small_mod(a, k, p), crypto::from_mpz(prod));
    }
}

TEST(U256, AddModNearFullWidth) {
    U256 p(~0ULL - 58, ~0ULL, ~0ULL, ~0ULL);  // 2^256 - 59
    U256 a(~0ULL - 60, ~0ULL, ~0ULL, ~0ULL);
    bool wrapped = false;
    EXPECT_EQ(add_mod(a, a, p, &wrapped), U256(~0ULL - 62, ~0ULL, ~0ULL, ~0ULL));
    EXPECT_TRUE(wrapped);
}

}  // namespace
}  // namespace aggsig
