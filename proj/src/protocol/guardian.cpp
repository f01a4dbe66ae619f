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

#include "aggsig/protocol/guardian.hpp"

#include <algorithm>
#include <string>

#include "aggsig/errors.hpp"

namespace aggsig::protocol {

std::size_t finalization_threshold(std::size_t n, ThresholdRule rule) {
    if (n == 0) throw StructuralError("threshold needs at least one guardian");
    if (rule == ThresholdRule::Inclusive) return (2 * n + 2) / 3;
    return 2 * n / 3 + 1;
}

GossipMessage make_message(std::size_t sender, const CheckpointId& checkpoint,
                           const Aggregate& held) {
    return {sender, checkpoint, held.sigma, encode_compact(held.signers)};
}

std::size_t wire_size(const GossipMessage& msg, const SignatureScheme& scheme) {
    std::size_t sender_bytes = 1;
    for (std::uint64_t v = msg.sender; v >= 0x80; v >>= 7) ++sender_bytes;
    return sender_bytes + 40 + scheme.signature_size() + msg.signers.size();
}

std::vector<std::uint8_t> serialize(const GossipMessage& msg, const SignatureScheme& scheme) {
    std::vector<std::uint8_t> out;
    out.reserve(wire_size(msg, scheme));
    put_varint(U256(msg.sender), out);
    auto cp = msg.checkpoint.message_bytes();
    out.insert(out.end(), cp.begin(), cp.end());
    auto sig = scheme.serialize_signature(msg.sigma);
    out.insert(out.end(), sig.begin(), sig.end());
    out.insert(out.end(), msg.signers.begin(), msg.signers.end());
    return out;
}

std::optional<GossipMessage> parse(std::span<const std::uint8_t> bytes) {
    GossipMessage msg;
    std::size_t pos = 0;
    try {
        U256 sender = get_varint(bytes, pos);
        if (!sender.fits_u64()) return std::nullopt;
        msg.sender = static_cast<std::size_t>(sender.limbs[0]);
    } catch (const DecodeError&) {
        return std::nullopt;
    }
    if (bytes.size() - pos < 40 + crypto::type_a::kPointBytes) return std::nullopt;
    for (std::size_t k = 0; k < 8; ++k) msg.checkpoint.height = (msg.checkpoint.height << 8) | bytes[pos + k];
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos + 8), 32, msg.checkpoint.hash.begin());
    pos += 40;
    auto sigma = crypto::parse_pairing_signature(bytes.subspan(pos, crypto::type_a::kPointBytes));
    if (!sigma) return std::nullopt;
    msg.sigma = std::move(*sigma);
    pos += crypto::type_a::kPointBytes;
    msg.signers.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
    return msg;
}

GuardianState init_guardian(const SignatureScheme& scheme, std::size_t i, std::size_t n,
                            const KeyPair& key, std::vector<std::size_t> neighbors,
                            const CheckpointId& checkpoint, const GuardianParams& params) {
    if (i >= n) {
        throw StructuralError("guardian index " + std::to_string(i) + " out of range for n=" +
                              std::to_string(n));
    }
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    neighbors.erase(std::remove(neighbors.begin(), neighbors.end(), i), neighbors.end());
    if (!neighbors.empty() && neighbors.back() >= n) throw StructuralError("neighbor index out of range");

    GuardianState s;
    s.index = i;
    s.n = n;
    s.key = key;
    s.checkpoint = checkpoint;
    s.held = {scheme.sign(key, i, n, checkpoint), init_signer_vector(i, n)};
    s.neighbors = std::move(neighbors);
    s.threshold = params.threshold == 0 ? finalization_threshold(n) : params.threshold;
    s.max_iterations = params.max_iterations;
    s.break_on_finalize = params.break_on_finalize;
    return s;
}

std::optional<GossipMessage> outgoing(const GuardianState& state) {
    if (state.exited || state.iteration >= state.max_iterations) return std::nullopt;
    return make_message(state.index, state.checkpoint, state.held);
}

CheckedMessage check_message(const SignatureScheme& scheme, const PairingTable& table,
                             const GossipMessage& msg) {
    CheckedMessage out;
    out.sender = msg.sender;
    if (msg.checkpoint != table.checkpoint) return out;
    SignerVector c;
    try {
        c = decode_compact(msg.signers, table.n, crypto::group_order());
    } catch (const DecodeError&) {
        return out;
    }
    if (unique_signers(c) == 0) return out;
    try {
        if (!scheme.verify_aggregate(msg.sigma, c, table)) return out;
    } catch (const StructuralError&) {
        return out;
    }
    out.valid = true;
    out.content = {msg.sigma, std::move(c)};
    return out;
}

StepReport step(GuardianState& state, const SignatureScheme& scheme,
                std::span<const CheckedMessage* const> inbox) {
    StepReport report;
    if (state.exited || state.iteration >= state.max_iterations) {
        report.discarded = inbox.size();
        report.unique_signers = unique_signers(state.held.signers);
        report.max_entry = max_entry(state.held.signers);
        return report;
    }
    if (state.finalized && state.break_on_finalize) {
        state.exited = true;
        report.discarded = inbox.size();
        report.unique_signers = unique_signers(state.held.signers);
        report.max_entry = max_entry(state.held.signers);
        return report;
    }

    const U256& p = crypto::group_order();
    std::vector<std::size_t> seen;
    seen.reserve(inbox.size());
    for (const CheckedMessage* m : inbox) {
        bool neighbor = std::binary_search(state.neighbors.begin(), state.neighbors.end(), m->sender);
        bool repeat = std::find(seen.begin(), seen.end(), m->sender) != seen.end();
        if (neighbor && !repeat) seen.push_back(m->sender);
        if (!neighbor || repeat || !m->valid || m->content.signers.size() != state.n) {
            ++report.discarded;
            continue;
        }
        scheme.multiply_into(state.held.sigma, m->content.sigma);
        report.wraps += add_mod_p_inplace(state.held.signers, m->content.signers, p);
        ++report.verified;
    }

    report.unique_signers = unique_signers(state.held.signers);
    report.max_entry = max_entry(state.held.signers);
    ++state.iteration;
    report.stepped = true;
    if (!state.finalized && report.unique_signers >= state.threshold) {
        state.finalized = true;
        state.finalized_at = state.iteration;
        report.newly_finalized = true;
    }
    return report;
}

StepReport receive_and_step(GuardianState& state, const SignatureScheme& scheme,
                            std::span<const GossipMessage> inbox, const PairingTable& table) {
    std::vector<CheckedMessage> checked;
    checked.reserve(inbox.size());
    for (const auto& msg : inbox) checked.push_back(check_message(scheme, table, msg));
    std::vector<const CheckedMessage*> ptrs;
    ptrs.reserve(checked.size());
    for (const auto& c : checked) ptrs.push_back(&c);
    return step(state, scheme, ptrs);
}

}  // namespace aggsig::protocol
