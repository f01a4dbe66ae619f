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

#include "engine.hpp"

#include <algorithm>

#include "aggsig/errors.hpp"

namespace aggsig::netsim::detail {

namespace {

constexpr std::uint32_t kKeys = 0x6b657973;
constexpr std::uint32_t kByzVector = 0x62766563;
constexpr std::uint32_t kByzForge = 0x62666f72;

using protocol::CheckedMessage;
using protocol::GossipMessage;

GossipMessage byzantine_message(const Instance& inst, std::size_t node, std::size_t round,
                                const crypto::AggregateSignature& own_sig) {
    const std::size_t n = inst.topology->n;
    const auto& scheme = *inst.scheme;
    GossipMessage msg;
    msg.sender = node;
    msg.checkpoint = inst.checkpoint;
    switch (inst.behavior) {
        case Behavior::FakeSignature: {
            auto rng = derive_rng(inst.seed, kByzVector, node, round);
            std::bernoulli_distribution present(0.7);
            std::uniform_int_distribution<std::uint64_t> count(1, 64);
            SignerVector claimed(n);
            for (std::size_t u = 0; u < n; ++u) {
                if (present(rng)) claimed.set(u, U256(count(rng)));
            }
            if (claimed.at(node).is_zero()) claimed.set(node, U256(1));
            auto forge_rng = derive_rng(inst.seed, kByzForge, node, round);
            msg.sigma = scheme.forge(forge_rng, claimed, inst.checkpoint);
            msg.signers = encode_compact(claimed);
            break;
        }
        case Behavior::VectorInflation: {
            auto rng = derive_rng(inst.seed, kByzVector, node, round);
            U256 k = crypto::random_scalar(rng);
            SignerVector claimed(n);
            claimed.set(node, k);
            msg.sigma = scheme.power(own_sig, k);
            msg.signers = encode_compact(claimed);
            break;
        }
        case Behavior::Honest:
        case Behavior::Silent:
            break;
    }
    return msg;
}

}  // namespace

std::mt19937_64 derive_rng(std::uint64_t seed, std::uint32_t purpose, std::uint64_t a,
                           std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      purpose,
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

std::vector<crypto::KeyPair> make_keys(const crypto::SignatureScheme& scheme, std::size_t n,
                                       std::uint64_t seed) {
    auto rng = derive_rng(seed, kKeys);
    std::vector<crypto::KeyPair> keys;
    keys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) keys.push_back(scheme.keygen(rng));
    return keys;
}

SimRun run_instance(const Instance& inst) {
    const Topology& topo = *inst.topology;
    const auto& scheme = *inst.scheme;
    const std::size_t n = topo.n;
    if (inst.roles.size() != n || inst.keys.size() != n) {
        throw StructuralError("instance roles and keys must cover every guardian");
    }

    SimRun run;
    run.iterations = inst.iterations;
    run.threshold = inst.threshold;
    run.mean_degree = topo.mean_degree();
    run.byzantine_mask.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.roles[i] == Role::Honest) ++run.honest;
        if (inst.roles[i] == Role::Byzantine) {
            ++run.byzantine;
            run.byzantine_mask[i] = 1;
        }
    }
    run.messages_per_node.assign(n, 0);
    run.bytes_per_node.assign(n, 0);
    run.finalized_round.assign(n, std::nullopt);

    std::vector<crypto::PublicKey> pks;
    pks.reserve(n);
    for (const auto& k : inst.keys) pks.push_back(k.pk);
    const crypto::PairingTable table = scheme.precompute_pairings(pks, inst.checkpoint);
    run.checkpoint = inst.checkpoint;

    protocol::GuardianParams params;
    params.max_iterations = inst.iterations;
    params.threshold = inst.threshold;
    params.break_on_finalize = inst.break_on_finalize;

    std::vector<protocol::GuardianState> states(n);
    std::vector<crypto::AggregateSignature> byz_sig(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.roles[i] == Role::Honest) {
            states[i] = protocol::init_guardian(scheme, i, n, inst.keys[i], topo.adjacency[i],
                                                inst.checkpoint, params);
        } else if (inst.roles[i] == Role::Byzantine && inst.behavior == Behavior::VectorInflation) {
            byz_sig[i] = scheme.sign(inst.keys[i], i, n, inst.checkpoint);
        }
    }

    auto snapshot = [&] {
        std::vector<SignerVector> row(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (inst.roles[i] == Role::Honest) row[i] = states[i].held.signers;
        }
        run.trajectories.push_back(std::move(row));
    };
    if (inst.record_trajectories) snapshot();

    std::vector<std::optional<CheckedMessage>> sent(n);
    std::vector<const CheckedMessage*> inbox;

    for (std::size_t round = 1; round <= inst.iterations; ++round) {
        bool honest_active = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (inst.roles[i] == Role::Honest && !states[i].exited &&
                states[i].iteration < states[i].max_iterations) {
                honest_active = true;
                break;
            }
        }
        if (!honest_active) break;

        RoundStats stats;
        stats.round = round;
        stats.node_max_entry.assign(n, U256());
        const std::size_t global_round = inst.round_offset + round;

        // phase 1: collect and check every emission once
        for (std::size_t i = 0; i < n; ++i) {
            sent[i].reset();
            std::optional<GossipMessage> msg;
            if (inst.roles[i] == Role::Honest) {
                msg = protocol::outgoing(states[i]);
            } else if (inst.roles[i] == Role::Byzantine && inst.behavior != Behavior::Silent &&
                       inst.behavior != Behavior::Honest) {
                msg = byzantine_message(inst, i, global_round, byz_sig[i]);
            }
            if (!msg) continue;
            const std::size_t size = protocol::wire_size(*msg, scheme);
            const std::size_t fanout = topo.adjacency[i].size();
            stats.messages_sent += fanout;
            stats.bytes_sent += size * fanout;
            stats.max_message_bytes = std::max(stats.max_message_bytes, size);
            run.messages_per_node[i] += fanout;
            run.bytes_per_node[i] += size * fanout;
            sent[i] = protocol::check_message(scheme, table, *msg);
        }

        // phase 2: deliver and step
        for (std::size_t v = 0; v < n; ++v) {
            if (inst.roles[v] != Role::Honest) continue;
            inbox.clear();
            for (std::size_t u : topo.adjacency[v]) {
                if (!sent[u]) continue;
                bool cut = false;
                for (const auto& w : inst.partitions) cut = cut || w.cuts(global_round, u, v);
                if (cut) {
                    ++stats.messages_dropped;
                    continue;
                }
                inbox.push_back(&*sent[u]);
            }
            auto report = protocol::step(states[v], scheme, inbox);
            stats.messages_discarded += report.discarded;
            run.wrap_events += report.wraps;
            if (report.newly_finalized) run.finalized_round[v] = round;
            stats.node_max_entry[v] = report.max_entry;
            if (report.max_entry > stats.max_entry) stats.max_entry = report.max_entry;
            if (states[v].finalized) ++stats.finalized_honest;
        }

        if (stats.max_entry > run.max_entry) run.max_entry = stats.max_entry;
        run.max_message_bytes = std::max(run.max_message_bytes, stats.max_message_bytes);
        if (!run.convergence_round && stats.finalized_honest == run.honest) {
            run.convergence_round = round;
            run.max_entry_at_convergence = stats.max_entry;
        }
        run.rounds.push_back(std::move(stats));
        if (inst.record_trajectories) snapshot();
    }

    if (inst.record_trajectories) {
        while (run.trajectories.size() < inst.iterations + 1) run.trajectories.push_back(run.trajectories.back());
    }
    if (run.honest == 0 && !run.convergence_round) run.convergence_round = 0;

    run.final_state.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.roles[i] == Role::Honest) run.final_state[i] = std::move(states[i].held);
    }
    run.public_keys = std::move(pks);
    return run;
}

}  // namespace aggsig::netsim::detail
