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

#include "aggsig/crypto/scheme.hpp"

#include <string>

#include "aggsig/errors.hpp"
#include "backends.hpp"

namespace aggsig::crypto {

std::string_view backend_name(BackendKind kind) {
    switch (kind) {
        case BackendKind::Pairing:
            return "pairing";
        case BackendKind::Oracle:
            return "oracle";
    }
    return "unknown";
}

std::optional<BackendKind> parse_backend(std::string_view name) {
    if (name == "pairing") return BackendKind::Pairing;
    if (name == "oracle") return BackendKind::Oracle;
    return std::nullopt;
}

const U256& group_order() {
    static const U256 p = from_mpz(type_a::group_order());
    return p;
}

std::array<std::uint8_t, 40> CheckpointId::message_bytes() const {
    std::array<std::uint8_t, 40> out{};
    for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(height >> (56 - 8 * i));
    std::copy(hash.begin(), hash.end(), out.begin() + 8);
    return out;
}

CheckpointId make_checkpoint(std::uint64_t height, const Digest& hash, std::uint64_t interval) {
    if (interval == 0 || height % interval != 0) {
        throw StructuralError("checkpoint height " + std::to_string(height) +
                              " is not a multiple of the interval " + std::to_string(interval));
    }
    return {height, hash};
}

std::vector<std::uint8_t> hash_input(const PublicKey& pk, const CheckpointId& checkpoint) {
    std::vector<std::uint8_t> out;
    auto len = static_cast<std::uint32_t>(pk.bytes.size());
    out.reserve(4 + pk.bytes.size() + 40);
    for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
    out.insert(out.end(), pk.bytes.begin(), pk.bytes.end());
    auto msg = checkpoint.message_bytes();
    out.insert(out.end(), msg.begin(), msg.end());
    return out;
}

type_a::Point hash_to_group(const PublicKey& pk, const CheckpointId& checkpoint) {
    return type_a::hash_to_group(hash_input(pk, checkpoint));
}

Aggregate aggregate(const SignatureScheme& scheme, Aggregate own, std::span<const Aggregate> incoming) {
    const U256& p = group_order();
    for (const auto& in : incoming) {
        scheme.multiply_into(own.sigma, in.sigma);
        add_mod_p_inplace(own.signers, in.signers, p);
    }
    return own;
}

U256 random_scalar(Rng& rng) {
    const U256& p = group_order();
    const unsigned bits = p.bit_length();
    for (;;) {
        U256 v;
        for (unsigned k = 0; k * 64 < bits; ++k) v.limbs[k] = rng();
        if (bits % 64 != 0) v.limbs[bits / 64] &= (std::uint64_t{1} << (bits % 64)) - 1;
        if (!v.is_zero() && v < p) return v;
    }
}

mpz_class to_mpz(const U256& v) {
    mpz_class out;
    mpz_import(out.get_mpz_t(), 4, -1, sizeof(std::uint64_t), 0, 0, v.limbs.data());
    return out;
}

U256 from_mpz(const mpz_class& v) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 256) {
        throw std::out_of_range("value does not fit in 256 bits");
    }
    U256 out;
    std::size_t count = 0;
    mpz_export(out.limbs.data(), &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
    return out;
}

std::unique_ptr<SignatureScheme> make_scheme(BackendKind kind) {
    switch (kind) {
        case BackendKind::Pairing:
            return std::make_unique<PairingScheme>();
        case BackendKind::Oracle:
            return std::make_unique<OracleScheme>();
    }
    throw ConfigError("unknown backend");
}

}  // namespace aggsig::crypto
