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

// BLS aggregate signatures over a prime-order group with a bilinear map,
// behind one interface with two backends:
//
//   Pairing  real Type-A pairing (see type_a.hpp). Suitable for a few dozen
//            guardians; each verification costs one pairing plus n small
//            exponentiations in G_T.
//   Oracle   accounting stand-in. A signature is the exact multiset of signer
//            shares it contains, tagged with its checkpoint; verification is
//            equality with the claimed signer vector. Scales to thousands of
//            guardians.
//
// Both backends share the group order p, so signer vectors and their
// reductions are identical across backends.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "aggsig/crypto/type_a.hpp"
#include "aggsig/digest.hpp"
#include "aggsig/signer_vector.hpp"
#include "aggsig/u256.hpp"

namespace aggsig::crypto {

using Rng = std::mt19937_64;

enum class BackendKind { Pairing, Oracle };

std::string_view backend_name(BackendKind kind);
std::optional<BackendKind> parse_backend(std::string_view name);

/// The order p shared by G and G_T (180 bits).
const U256& group_order();

struct CheckpointId {
    std::uint64_t height = 0;
    Digest hash{};

    /// height as 8 bytes big-endian followed by the 32-byte hash.
    [[nodiscard]] std::array<std::uint8_t, 40> message_bytes() const;

    friend bool operator==(const CheckpointId&, const CheckpointId&) = default;
};

/// Checkpoint at a height that must be a multiple of interval. Throws
/// StructuralError otherwise.
CheckpointId make_checkpoint(std::uint64_t height, const Digest& hash, std::uint64_t interval);

/// Serialized public key; 65-byte compressed point on the pairing backend.
struct PublicKey {
    std::vector<std::uint8_t> bytes;
    friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct KeyPair {
    U256 sk;
    PublicKey pk;
};

/// Oracle-backend signature: the shares it aggregates.
struct OracleTally {
    std::optional<CheckpointId> checkpoint;  // nullopt: identity, nothing signed yet
    bool mixed = false;                      // shares over different checkpoints
    SignerVector shares;

    friend bool operator==(const OracleTally&, const OracleTally&) = default;
};

struct AggregateSignature {
    std::variant<type_a::Point, OracleTally> value;
    friend bool operator==(const AggregateSignature&, const AggregateSignature&) = default;
};

/// Per-checkpoint verification context. On the pairing backend entry u is
/// e(H(pk_u, checkpoint), pk_u); the oracle backend keeps only n.
struct PairingTable {
    CheckpointId checkpoint;
    std::size_t n = 0;
    std::vector<type_a::Fq2> entries;
};

/// A signature together with the signer vector it claims.
struct Aggregate {
    AggregateSignature sigma;
    SignerVector signers;
};

class SignatureScheme {
  public:
    virtual ~SignatureScheme() = default;

    [[nodiscard]] virtual BackendKind kind() const = 0;

    /// Uniform sk in [1, p); same generator state gives the same key.
    virtual KeyPair keygen(Rng& rng) const = 0;
    /// Throws StructuralError unless 1 <= sk < p.
    virtual KeyPair keypair_from_secret(const U256& sk) const = 0;

    /// Individual signature of guardian `signer` (of n) over the checkpoint.
    virtual AggregateSignature sign(const KeyPair& key, std::size_t signer, std::size_t n,
                                    const CheckpointId& checkpoint) const = 0;

    virtual PairingTable precompute_pairings(std::span<const PublicKey> pks,
                                             const CheckpointId& checkpoint) const = 0;

    /// Throws StructuralError when c and the table disagree on n.
    virtual bool verify_aggregate(const AggregateSignature& sig, const SignerVector& c,
                                  const PairingTable& table) const = 0;

    [[nodiscard]] virtual AggregateSignature identity(std::size_t n) const = 0;
    /// acc = acc * x in G.
    virtual void multiply_into(AggregateSignature& acc, const AggregateSignature& x) const = 0;
    /// sig^k in G.
    virtual AggregateSignature power(const AggregateSignature& sig, const U256& k) const = 0;

    /// A signature that fails verification against `claimed`.
    virtual AggregateSignature forge(Rng& rng, const SignerVector& claimed,
                                     const CheckpointId& checkpoint) const = 0;

    /// Fixed wire width of a signature.
    [[nodiscard]] virtual std::size_t signature_size() const = 0;
    virtual std::vector<std::uint8_t> serialize_signature(const AggregateSignature& sig) const = 0;
};

std::unique_ptr<SignatureScheme> make_scheme(BackendKind kind);

/// Inverse of the pairing backend's serialize_signature. Nullopt for bytes
/// that are not a canonical element of G. Oracle signatures are digests and
/// have no inverse.
std::optional<AggregateSignature> parse_pairing_signature(std::span<const std::uint8_t> bytes);

/// Length-prefixed pk, 8-byte big-endian height, 32-byte hash: the input
/// hashed into G for one guardian's message.
std::vector<std::uint8_t> hash_input(const PublicKey& pk, const CheckpointId& checkpoint);

/// H(pk, height || hash) on the pairing group.
type_a::Point hash_to_group(const PublicKey& pk, const CheckpointId& checkpoint);

/// Folds incoming aggregates into own: signatures multiplied in G, vectors
/// added mod p. Incoming entries must already have passed verification.
Aggregate aggregate(const SignatureScheme& scheme, Aggregate own, std::span<const Aggregate> incoming);

/// Uniform scalar in [1, p).
U256 random_scalar(Rng& rng);

mpz_class to_mpz(const U256& v);
U256 from_mpz(const mpz_class& v);

}  // namespace aggsig::crypto
