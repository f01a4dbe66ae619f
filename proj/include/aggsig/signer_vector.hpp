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

// The signer vector: one counter per guardian recording how many times that
// guardian's signature share has been folded into an aggregate, reduced
// modulo the group order p.
//
// Wire encoding (encode_compact): the n counters in index order, each as an
// unsigned LEB128 varint (7-bit groups, least significant first, high bit set
// on every byte but the last). The encoding is canonical: the final byte of a
// multi-byte varint is never zero, zero is the single byte 0x00, and no value
// exceeds 256 bits. The byte string carries no length prefix; the decoder is
// told n and p and rejects short input, trailing bytes, and counters >= p.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aggsig/u256.hpp"

namespace aggsig {

/// Counters are logically 256-bit. Storage is limb-planar: the low 64-bit
/// limb of every counter first, then (only once some counter needs more than
/// 64 bits) the three higher limb planes.
class SignerVector {
  public:
    SignerVector() = default;
    /// All-zero vector over n guardians.
    explicit SignerVector(std::size_t n) : n_(n), limbs_(n, 0) {}

    [[nodiscard]] std::size_t size() const { return n_; }

    /// Entry u. Throws StructuralError when u >= size().
    [[nodiscard]] U256 at(std::size_t u) const;
    /// Overwrites entry u. The caller keeps the value below p.
    void set(std::size_t u, const U256& value);

    /// Low 64-bit limb of every counter.
    [[nodiscard]] std::span<const std::uint64_t> low_plane() const { return {limbs_.data(), n_}; }

    /// True when every counter fits in 64 bits.
    [[nodiscard]] bool narrow() const;

    friend bool operator==(const SignerVector& a, const SignerVector& b);

  private:
    friend std::size_t add_mod_p_inplace(SignerVector& acc, const SignerVector& b, const U256& p);
    friend std::size_t unique_signers(const SignerVector& c);

    [[nodiscard]] bool wide_storage() const { return limbs_.size() == 4 * n_ && n_ > 0; }
    void widen();
    void narrow_if_possible();

    std::size_t n_ = 0;
    std::vector<std::uint64_t> limbs_;  // n words, or 4 * n when wide
};

/// Unit vector e_i of length n. Throws StructuralError unless i < n.
SignerVector init_signer_vector(std::size_t i, std::size_t n);

/// Entrywise (a + b) mod p. Throws StructuralError on length mismatch.
SignerVector add_mod_p(const SignerVector& a, const SignerVector& b, const U256& p);

/// acc = (acc + b) mod p in place; returns the number of entries that wrapped.
std::size_t add_mod_p_inplace(SignerVector& acc, const SignerVector& b, const U256& p);

/// Number of entries with c_u > 0.
std::size_t unique_signers(const SignerVector& c);

/// Largest entry, zero for an empty vector.
U256 max_entry(const SignerVector& c);

std::vector<std::uint8_t> encode_compact(const SignerVector& c);

/// Appends the encoding of c to out; returns the number of bytes appended.
std::size_t encode_compact_into(const SignerVector& c, std::vector<std::uint8_t>& out);

/// Inverse of encode_compact. Throws DecodeError on truncated, trailing,
/// non-canonical, or out-of-range input.
SignerVector decode_compact(std::span<const std::uint8_t> bytes, std::size_t n, const U256& p);

/// Writes one canonical varint; returns bytes written (at most 37).
std::size_t put_varint(const U256& v, std::vector<std::uint8_t>& out);

/// Reads one canonical varint starting at pos, advancing pos. Throws DecodeError.
U256 get_varint(std::span<const std::uint8_t> bytes, std::size_t& pos);

}  // namespace aggsig
