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

#include <string>

#include "aggsig/errors.hpp"
#include "backends.hpp"

namespace aggsig::crypto {

namespace {

const type_a::Point& point_of(const AggregateSignature& sig) {
    const auto* p = std::get_if<type_a::Point>(&sig.value);
    if (p == nullptr) throw StructuralError("signature does not belong to the pairing backend");
    return *p;
}

type_a::Point parse_public_key(const PublicKey& pk) {
    auto point = type_a::parse_point(pk.bytes);
    if (!point || point->infinity) throw StructuralError("public key is not an element of G");
    return *point;
}

}  // namespace

KeyPair PairingScheme::keygen(Rng& rng) const { return keypair_from_secret(random_scalar(rng)); }

KeyPair PairingScheme::keypair_from_secret(const U256& sk) const {
    if (sk.is_zero() || sk >= group_order()) throw StructuralError("secret key outside [1, p)");
    auto pk = type_a::serialize_point(type_a::mul(type_a::generator(), to_mpz(sk)));
    return {sk, PublicKey{{pk.begin(), pk.end()}}};
}

AggregateSignature PairingScheme::sign(const KeyPair& key, std::size_t /*signer*/, std::size_t /*n*/,
                                       const CheckpointId& checkpoint) const {
    type_a::Point h = hash_to_group(key.pk, checkpoint);
    return {type_a::mul(h, to_mpz(key.sk))};
}

PairingTable PairingScheme::precompute_pairings(std::span<const PublicKey> pks,
                                                const CheckpointId& checkpoint) const {
    PairingTable table{checkpoint, pks.size(), {}};
    table.entries.reserve(pks.size());
    for (const auto& pk : pks) {
        type_a::Point point = parse_public_key(pk);
        table.entries.push_back(type_a::pairing(hash_to_group(pk, checkpoint), point));
    }
    return table;
}

bool PairingScheme::verify_aggregate(const AggregateSignature& sig, const SignerVector& c,
                                     const PairingTable& table) const {
    if (c.size() != table.n || table.entries.size() != table.n) {
        throw StructuralError("signer vector has " + std::to_string(c.size()) +
                              " entries, pairing table has " + std::to_string(table.n));
    }
    const auto* sigma = std::get_if<type_a::Point>(&sig.value);
    if (sigma == nullptr || !type_a::on_curve(*sigma)) return false;

    type_a::Fq2 expected = type_a::gt_one();
    for (std::size_t u = 0; u < c.size(); ++u) {
        U256 count = c.at(u);
        if (count.is_zero()) continue;
        expected = type_a::gt_mul(expected, type_a::gt_pow(table.entries[u], to_mpz(count)));
    }
    return type_a::pairing(*sigma, type_a::generator()) == expected;
}

AggregateSignature PairingScheme::identity(std::size_t /*n*/) const {
    return {type_a::Point::identity()};
}

void PairingScheme::multiply_into(AggregateSignature& acc, const AggregateSignature& x) const {
    acc.value = type_a::add(point_of(acc), point_of(x));
}

AggregateSignature PairingScheme::power(const AggregateSignature& sig, const U256& k) const {
    return {type_a::mul(point_of(sig), to_mpz(k))};
}

AggregateSignature PairingScheme::forge(Rng& rng, const SignerVector& /*claimed*/,
                                        const CheckpointId& /*checkpoint*/) const {
    return {type_a::mul(type_a::generator(), to_mpz(random_scalar(rng)))};
}

std::vector<std::uint8_t> PairingScheme::serialize_signature(const AggregateSignature& sig) const {
    auto bytes = type_a::serialize_point(point_of(sig));
    return {bytes.begin(), bytes.end()};
}

std::optional<AggregateSignature> parse_pairing_signature(std::span<const std::uint8_t> bytes) {
    auto point = type_a::parse_point(bytes);
    if (!point) return std::nullopt;
    return AggregateSignature{std::move(*point)};
}

}  // namespace aggsig::crypto
