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

// One guardian running the gossip loop for a single checkpoint:
//
//   for t in 1..L:
//     send (sigma, c) to every neighbor
//     if finalized: stop
//     collect neighbor messages, drop the ones that fail verification
//     fold the rest into (sigma, c); s = unique signers of c
//     if s reaches the threshold: finalized
//
// The round engine drives this as outgoing() followed by step(). A round's
// messages are checked once per broadcast with check_message(); step() only
// consumes the verdicts. receive_and_step() does both for a single node.
//
// GossipMessage wire format:
//   sender      unsigned LEB128 varint
//   height      8 bytes big-endian
//   hash        32 bytes
//   sigma       signature_size() bytes (65 on both backends)
//   signers     encode_compact(c), running to the end of the message

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aggsig/crypto/scheme.hpp"
#include "aggsig/signer_vector.hpp"

namespace aggsig::protocol {

using crypto::Aggregate;
using crypto::AggregateSignature;
using crypto::CheckpointId;
using crypto::KeyPair;
using crypto::PairingTable;
using crypto::SignatureScheme;

enum class ThresholdRule {
    Strict,      // more than 2n/3 signers: floor(2n/3) + 1
    Inclusive,   // at least 2n/3 signers: ceil(2n/3)
};

/// Signers needed to finalize among n guardians. n must be at least 1.
std::size_t finalization_threshold(std::size_t n, ThresholdRule rule = ThresholdRule::Strict);

struct GossipMessage {
    std::size_t sender = 0;
    CheckpointId checkpoint;
    AggregateSignature sigma;
    std::vector<std::uint8_t> signers;  // encode_compact of the claimed vector
};

GossipMessage make_message(std::size_t sender, const CheckpointId& checkpoint,
                           const Aggregate& held);

/// Serialized length, computed without serializing.
std::size_t wire_size(const GossipMessage& msg, const SignatureScheme& scheme);
std::vector<std::uint8_t> serialize(const GossipMessage& msg, const SignatureScheme& scheme);
/// Parses pairing-backend messages; nullopt for anything malformed. The
/// signer bytes are split off but not decoded.
std::optional<GossipMessage> parse(std::span<const std::uint8_t> bytes);

struct GuardianState {
    std::size_t index = 0;
    std::size_t n = 0;
    KeyPair key;
    CheckpointId checkpoint;
    Aggregate held;
    std::vector<std::size_t> neighbors;  // sorted, no self
    std::size_t threshold = 1;
    std::size_t iteration = 0;           // completed steps
    std::size_t max_iterations = 0;      // L
    bool break_on_finalize = true;       // false removes the early exit, for the counting model
    bool finalized = false;
    bool exited = false;
    std::optional<std::size_t> finalized_at;  // iteration count when the threshold was reached
};

struct GuardianParams {
    std::size_t max_iterations = 5;
    std::size_t threshold = 0;  // 0: finalization_threshold(n)
    bool break_on_finalize = true;
};

/// Fresh state: sigma = own signature, c = e_i. Throws StructuralError unless i < n.
GuardianState init_guardian(const SignatureScheme& scheme, std::size_t i, std::size_t n,
                            const KeyPair& key, std::vector<std::size_t> neighbors,
                            const CheckpointId& checkpoint, const GuardianParams& params = {});

/// Message for this round, or nothing once the node has left the loop.
std::optional<GossipMessage> outgoing(const GuardianState& state);

/// A received message after decoding and verification.
struct CheckedMessage {
    std::size_t sender = 0;
    bool valid = false;
    Aggregate content;  // meaningful only when valid
};

/// Decodes and verifies one message against the table. Wrong checkpoint,
/// undecodable or all-zero vectors, and failed verification all yield
/// valid = false.
CheckedMessage check_message(const SignatureScheme& scheme, const PairingTable& table,
                             const GossipMessage& msg);

struct StepReport {
    std::size_t verified = 0;
    std::size_t discarded = 0;
    std::size_t unique_signers = 0;
    U256 max_entry;
    std::size_t wraps = 0;          // entries reduced mod p while folding
    bool newly_finalized = false;
    bool stepped = false;           // false when the node had already left the loop
};

/// One loop iteration on already checked messages. Messages from
/// non-neighbors and repeat senders (after the first) are discarded.
StepReport step(GuardianState& state, const SignatureScheme& scheme,
                std::span<const CheckedMessage* const> inbox);

StepReport receive_and_step(GuardianState& state, const SignatureScheme& scheme,
                            std::span<const GossipMessage> inbox, const PairingTable& table);

}  // namespace aggsig::protocol
