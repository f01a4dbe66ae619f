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

#include "aggsig/crypto/scheme.hpp"

namespace aggsig::crypto {

class PairingScheme final : public SignatureScheme {
  public:
    [[nodiscard]] BackendKind kind() const override { return BackendKind::Pairing; }
    KeyPair keygen(Rng& rng) const override;
    KeyPair keypair_from_secret(const U256& sk) const override;
    AggregateSignature sign(const KeyPair& key, std::size_t signer, std::size_t n,
                            const CheckpointId& checkpoint) const override;
    PairingTable precompute_pairings(std::span<const PublicKey> pks,
                                     const CheckpointId& checkpoint) const override;
    bool verify_aggregate(const AggregateSignature& sig, const SignerVector& c,
                          const PairingTable& table) const override;
    [[nodiscard]] AggregateSignature identity(std::size_t n) const override;
    void multiply_into(AggregateSignature& acc, const AggregateSignature& x) const override;
    AggregateSignature power(const AggregateSignature& sig, const U256& k) const override;
    AggregateSignature forge(Rng& rng, const SignerVector& claimed,
                             const CheckpointId& checkpoint) const override;
    [[nodiscard]] std::size_t signature_size() const override { return type_a::kPointBytes; }
    std::vector<std::uint8_t> serialize_signature(const AggregateSignature& sig) const override;
};

/// Oracle signatures serialize to a 65-byte stand-in of the same width as a
/// pairing-backend point: 0x00 followed by zeros for the identity, otherwise
/// 0x01 || SHA-256(checkpoint message || mixed flag || compact shares) || 32
/// zero bytes.
class OracleScheme final : public SignatureScheme {
  public:
    [[nodiscard]] BackendKind kind() const override { return BackendKind::Oracle; }
    KeyPair keygen(Rng& rng) const override;
    KeyPair keypair_from_secret(const U256& sk) const override;
    AggregateSignature sign(const KeyPair& key, std::size_t signer, std::size_t n,
                            const CheckpointId& checkpoint) const override;
    PairingTable precompute_pairings(std::span<const PublicKey> pks,
                                     const CheckpointId& checkpoint) const override;
    bool verify_aggregate(const AggregateSignature& sig, const SignerVector& c,
                          const PairingTable& table) const override;
    [[nodiscard]] AggregateSignature identity(std::size_t n) const override;
    void multiply_into(AggregateSignature& acc, const AggregateSignature& x) const override;
    AggregateSignature power(const AggregateSignature& sig, const U256& k) const override;
    AggregateSignature forge(Rng& rng, const SignerVector& claimed,
                             const CheckpointId& checkpoint) const override;
    [[nodiscard]] std::size_t signature_size() const override { return type_a::kPointBytes; }
    std::vector<std::uint8_t> serialize_signature(const AggregateSignature& sig) const override;
};

}  // namespace aggsig::crypto
