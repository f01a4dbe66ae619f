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

// Symmetric pairing on the supersingular curve E: y^2 = x^3 + x over F_q.
//
// q = h * r - 1 is a 512-bit prime with q = 3 (mod 4), so #E(F_q) = q + 1 and
// E has embedding degree 2. G is the order-r subgroup of E(F_q), r a 180-bit
// prime. G_T is the order-r subgroup of F_{q^2}^* with F_{q^2} = F_q[i]/(i^2+1).
// The pairing is the reduced Tate pairing composed with the distortion map
// (x, y) -> (-x, i*y), so e(P, Q) = e(Q, P) and e(g, g) != 1.
//
// Byte formats (big-endian, fixed width):
//   scalar      23 bytes
//   G element   65 bytes: tag || x (64 bytes); tag 0x00 = identity with x = 0,
//               0x02 / 0x03 = affine point whose y has even / odd parity
//   G_T element 128 bytes: real part (64) || imaginary part (64)

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aggsig::crypto::type_a {

inline constexpr std::size_t kScalarBytes = 23;
inline constexpr std::size_t kFieldBytes = 64;
inline constexpr std::size_t kPointBytes = 1 + kFieldBytes;
inline constexpr std::size_t kGtBytes = 2 * kFieldBytes;

const mpz_class& field_prime();   // q
const mpz_class& group_order();   // r
const mpz_class& cofactor();      // h = (q + 1) / r

/// Element re + im * i of F_{q^2}.
struct Fq2 {
    mpz_class re;
    mpz_class im;

    friend bool operator==(const Fq2& a, const Fq2& b) { return a.re == b.re && a.im == b.im; }
};

/// Affine point; infinity is the group identity.
struct Point {
    mpz_class x;
    mpz_class y;
    bool infinity = true;

    static Point identity() { return {}; }
    static Point affine(mpz_class x, mpz_class y) { return {std::move(x), std::move(y), false}; }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

const Point& generator();

bool on_curve(const Point& p);
/// On the curve and of order dividing r.
bool in_group(const Point& p);

Point negate(const Point& p);
Point add(const Point& a, const Point& b);
Point mul(const Point& p, const mpz_class& k);

/// e(P, Q) in G_T.
Fq2 pairing(const Point& p, const Point& q);

Fq2 gt_one();
Fq2 gt_mul(const Fq2& a, const Fq2& b);
Fq2 gt_pow(const Fq2& a, const mpz_class& k);

/// Maps bytes into G by try-and-increment over SHA-256 followed by
/// cofactor clearing. Deterministic; never returns the identity.
Point hash_to_group(std::span<const std::uint8_t> msg);

std::array<std::uint8_t, kPointBytes> serialize_point(const Point& p);
/// Nullopt unless the bytes are a canonical encoding of an element of G.
std::optional<Point> parse_point(std::span<const std::uint8_t> bytes);

std::array<std::uint8_t, kGtBytes> serialize_gt(const Fq2& v);
std::array<std::uint8_t, kScalarBytes> serialize_scalar(const mpz_class& k);

mpz_class mpz_from_bytes(std::span<const std::uint8_t> bytes);
void mpz_to_bytes(const mpz_class& v, std::span<std::uint8_t> out);

}  // namespace aggsig::crypto::type_a
