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

#include "aggsig/signer_vector.hpp"

#include <algorithm>
#include <string>

#include "aggsig/errors.hpp"
#include "aggsig/simd/kernels.hpp"

namespace aggsig {

namespace {

constexpr std::size_t kMaxVarintBytes = 37;  // ceil(256 / 7)

void put_varint_u64(std::uint64_t v, std::vector<std::uint8_t>& out) {
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

U256 SignerVector::at(std::size_t u) const {
    if (u >= n_) {
        throw StructuralError("signer index " + std::to_string(u) + " out of range for n=" +
                              std::to_string(n_));
    }
    if (!wide_storage()) return U256(limbs_[u]);
    return U256(limbs_[u], limbs_[n_ + u], limbs_[2 * n_ + u], limbs_[3 * n_ + u]);
}

void SignerVector::set(std::size_t u, const U256& value) {
    if (u >= n_) {
        throw StructuralError("signer index " + std::to_string(u) + " out of range for n=" +
                              std::to_string(n_));
    }
    if (!value.fits_u64()) widen();
    limbs_[u] = value.limbs[0];
    if (wide_storage()) {
        for (std::size_t k = 1; k < 4; ++k) limbs_[k * n_ + u] = value.limbs[k];
    }
}

bool SignerVector::narrow() const {
    return !wide_storage() || !simd::active().any_nonzero(limbs_.data() + n_, 3 * n_);
}

void SignerVector::widen() {
    if (!wide_storage()) limbs_.resize(4 * n_, 0);
}

void SignerVector::narrow_if_possible() {
    if (wide_storage() && narrow()) limbs_.resize(n_);
}

bool operator==(const SignerVector& a, const SignerVector& b) {
    if (a.n_ != b.n_) return false;
    if (a.wide_storage() == b.wide_storage()) return a.limbs_ == b.limbs_;
    return a.narrow() && b.narrow() &&
           std::equal(a.limbs_.begin(), a.limbs_.begin() + static_cast<std::ptrdiff_t>(a.n_),
                      b.limbs_.begin());
}

SignerVector init_signer_vector(std::size_t i, std::size_t n) {
    if (i >= n) {
        throw StructuralError("guardian index " + std::to_string(i) + " out of range for n=" +
                              std::to_string(n));
    }
    SignerVector c(n);
    c.set(i, U256(1));
    return c;
}

std::size_t add_mod_p_inplace(SignerVector& acc, const SignerVector& b, const U256& p) {
    if (acc.size() != b.size()) {
        throw StructuralError("signer vector length mismatch: " + std::to_string(acc.size()) +
                              " vs " + std::to_string(b.size()));
    }
    const auto& k = simd::active();
    const std::size_t n = acc.n_;
    if (!acc.wide_storage() && !b.wide_storage() && p.bit_length() > 65) {
        // two 64-bit counters sum below 2^65 < p: no reduction, only carries
        if (k.add_u64(acc.limbs_.data(), b.limbs_.data(), n) != 0) {
            acc.widen();
            for (std::size_t u = 0; u < n; ++u) {
                if (acc.limbs_[u] < b.limbs_[u]) acc.limbs_[n + u] = 1;
            }
        }
        return 0;
    }
    acc.widen();
    std::size_t wrapped = 0;
    if (b.wide_storage()) {
        wrapped = k.add_mod(acc.limbs_.data(), b.limbs_.data(), n, p.limbs.data());
    } else {
        SignerVector wide_b = b;
        wide_b.widen();
        wrapped = k.add_mod(acc.limbs_.data(), wide_b.limbs_.data(), n, p.limbs.data());
    }
    acc.narrow_if_possible();
    return wrapped;
}

SignerVector add_mod_p(const SignerVector& a, const SignerVector& b, const U256& p) {
    SignerVector out = a;
    add_mod_p_inplace(out, b, p);
    return out;
}

std::size_t unique_signers(const SignerVector& c) {
    return simd::active().count_nonzero(c.limbs_.data(), c.n_, c.wide_storage() ? 4 : 1);
}

U256 max_entry(const SignerVector& c) {
    const auto& k = simd::active();
    if (c.narrow()) return U256(k.max_u64(c.low_plane().data(), c.size()));
    U256 best;
    for (std::size_t u = 0; u < c.size(); ++u) {
        U256 v = c.at(u);
        if (v > best) best = v;
    }
    return best;
}

std::size_t put_varint(const U256& v, std::vector<std::uint8_t>& out) {
    std::size_t before = out.size();
    if (v.fits_u64()) {
        put_varint_u64(v.limbs[0], out);
        return out.size() - before;
    }
    unsigned bits = v.bit_length();
    for (unsigned pos = 0; pos < bits; pos += 7) {
        std::uint64_t group = v.limbs[pos / 64] >> (pos % 64);
        if (pos % 64 > 57 && pos / 64 + 1 < 4) group |= v.limbs[pos / 64 + 1] << (64 - pos % 64);
        group &= 0x7f;
        bool more = pos + 7 < bits;
        out.push_back(static_cast<std::uint8_t>(group | (more ? 0x80 : 0)));
    }
    return out.size() - before;
}

U256 get_varint(std::span<const std::uint8_t> bytes, std::size_t& pos) {
    U256 v;
    unsigned shift = 0;
    for (std::size_t i = 0; i < kMaxVarintBytes; ++i, shift += 7) {
        if (pos >= bytes.size()) throw DecodeError("truncated varint");
        std::uint8_t byte = bytes[pos++];
        std::uint64_t group = byte & 0x7f;
        if (shift + 7 > 256 && (group >> (256 - shift)) != 0) {
            throw DecodeError("varint exceeds 256 bits");
        }
        v.limbs[shift / 64] |= group << (shift % 64);
        if (shift % 64 > 57 && shift / 64 + 1 < 4) {
            v.limbs[shift / 64 + 1] |= group >> (64 - shift % 64);
        }
        if ((byte & 0x80) == 0) {
            if (byte == 0 && i > 0) throw DecodeError("non-canonical varint");
            return v;
        }
    }
    throw DecodeError("varint longer than 37 bytes");
}

std::size_t encode_compact_into(const SignerVector& c, std::vector<std::uint8_t>& out) {
    std::size_t before = out.size();
    std::size_t n = c.size();
    if (c.narrow()) {
        out.reserve(out.size() + n * 2);
        const std::uint64_t* low = c.low_plane().data();
        for (std::size_t u = 0; u < n; ++u) put_varint_u64(low[u], out);
    } else {
        for (std::size_t u = 0; u < n; ++u) put_varint(c.at(u), out);
    }
    return out.size() - before;
}

std::vector<std::uint8_t> encode_compact(const SignerVector& c) {
    std::vector<std::uint8_t> out;
    encode_compact_into(c, out);
    return out;
}

SignerVector decode_compact(std::span<const std::uint8_t> bytes, std::size_t n, const U256& p) {
    SignerVector c(n);
    std::size_t pos = 0;
    for (std::size_t u = 0; u < n; ++u) {
        if (pos < bytes.size() && bytes[pos] < 0x80) {
            c.set(u, U256(bytes[pos++]));
        } else {
            c.set(u, get_varint(bytes, pos));
        }
    }
    if (pos != bytes.size()) throw DecodeError("trailing bytes after signer vector");
    if (!c.narrow() || p.fits_u64()) {
        for (std::size_t u = 0; u < n; ++u) {
            if (c.at(u) >= p) throw DecodeError("signer vector entry not reduced mod p");
        }
    }
    return c;
}

}  // namespace aggsig
