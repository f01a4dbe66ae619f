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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "aggsig/crypto/scheme.hpp"
#include "aggsig/errors.hpp"
#include "aggsig/protocol/guardian.hpp"

namespace aggsig::protocol {
namespace {

using crypto::BackendKind;

TEST(Threshold, Examples) {
    EXPECT_EQ(finalization_threshold(1), 1u);
    EXPECT_EQ(finalization_threshold(3), 3u);
    EXPECT_EQ(finalization_threshold(4), 3u);
    EXPECT_EQ(finalization_threshold(100), 67u);
    EXPECT_EQ(finalization_threshold(1000), 667u);
    EXPECT_EQ(finalization_threshold(3, ThresholdRule::Inclusive), 2u);
    EXPECT_EQ(finalization_threshold(1000, ThresholdRule::Inclusive), 667u);
    EXPECT_EQ(finalization_threshold(999, ThresholdRule::Inclusive), 666u);
    for (std::size_t n = 1; n < 500; ++n) {
        std::size_t t = finalization_threshold(n);
        EXPECT_GT(3 * t, 2 * n);
        EXPECT_LE(3 * (t - 1), 2 * n);
    }
}

// Complete graph of n guardians over one checkpoint.
struct Network {
    std::unique_ptr<crypto::SignatureScheme> scheme;
    std::vector<KeyPair> keys;
    std::vector<crypto::PublicKey> pks;
    CheckpointId checkpoint{100, {}};
    PairingTable table;
    std::vector<GuardianState> nodes;

    Network(BackendKind kind, std::size_t n, GuardianParams params = {}) : scheme(crypto::make_scheme(kind)) {
        crypto::Rng rng(n * 7 + 1);
        checkpoint.hash.fill(0x3c);
        for (std::size_t i = 0; i < n; ++i) {
            keys.push_back(scheme->keygen(rng));
            pks.push_back(keys.back().pk);
        }
        table = scheme->precompute_pairings(pks, checkpoint);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> nb;
            for (std::size_t j = 0; j < n; ++j) nb.push_back(j);
            nodes.push_back(init_guardian(*scheme, i, n, keys[i], nb, checkpoint, params));
        }
    }

    std::vector<GossipMessage> round_messages() const {
        std::vector<GossipMessage> out;
        for (const auto& s : nodes) {
            if (auto m = outgoing(s)) out.push_back(*m);
        }
        return out;
    }

    std::vector<GossipMessage> inbox_for(std::size_t i, const std::vector<GossipMessage>& all) const {
        std::vector<GossipMessage> in;
        for (const auto& m : all) {
            if (m.sender != i) in.push_back(m);
        }
        return in;
    }
};

bool same_state(const GuardianState& a, const GuardianState& b) {
    return a.held.sigma == b.held.sigma && a.held.signers == b.held.signers &&
           a.finalized == b.finalized && a.iteration == b.iteration && a.exited == b.exited;
}

TEST(Guardian, InitExamples) {
    Network net(BackendKind::Pairing, 4);
    const GuardianState& s = net.nodes[2];
    SignerVector expect(4);
    expect.set(2, U256(1));
    EXPECT_EQ(s.held.signers, expect);
    EXPECT_FALSE(s.finalized);
    EXPECT_EQ(s.iteration, 0u);
    EXPECT_EQ(s.threshold, 3u);
    EXPECT_EQ(s.neighbors, (std::vector<std::size_t>{0, 1, 3}));
    EXPECT_TRUE(net.scheme->verify_aggregate(s.held.sigma, s.held.signers, net.table));
    EXPECT_THROW(init_guardian(*net.scheme, 4, 4, net.keys[0], {}, net.checkpoint), StructuralError);

    auto msg = outgoing(s);
    ASSERT_TRUE(msg.has_value());
    EXPECT_EQ(msg->sender, 2u);
    EXPECT_EQ(msg->signers, encode_compact(expect));
}

TEST(Guardian, SingleNodeFinalizesOnFirstStep) {
    Network net(BackendKind::Oracle, 1);
    StepReport r = receive_and_step(net.nodes[0], *net.scheme, {}, net.table);
    EXPECT_TRUE(r.newly_finalized);
    EXPECT_EQ(r.unique_signers, 1u);
}

TEST(Guardian, CompleteGraphFinalizesInOneRound) {
    for (BackendKind kind : {BackendKind::Pairing, BackendKind::Oracle}) {
        Network net(kind, 4);
        auto all = net.round_messages();
        ASSERT_EQ(all.size(), 4u);
        for (std::size_t i = 0; i < 4; ++i) {
            StepReport r = receive_and_step(net.nodes[i], *net.scheme, net.inbox_for(i, all), net.table);
            EXPECT_EQ(r.verified, 3u);
            EXPECT_EQ(r.discarded, 0u);
            EXPECT_EQ(r.unique_signers, 4u);
            EXPECT_EQ(r.max_entry, U256(1));
            EXPECT_TRUE(r.newly_finalized);
            SignerVector ones(4);
            for (std::size_t u = 0; u < 4; ++u) ones.set(u, U256(1));
            EXPECT_EQ(net.nodes[i].held.signers, ones);
            EXPECT_TRUE(net.scheme->verify_aggregate(net.nodes[i].held.sigma, ones, net.table));
        }
    }
}

TEST(Guardian, EmitsOnceMoreAfterFinalizing) {
    Network net(BackendKind::Oracle, 4);
    auto all = net.round_messages();
    GuardianState& s = net.nodes[0];
    receive_and_step(s, *net.scheme, net.inbox_for(0, all), net.table);
    ASSERT_TRUE(s.finalized);
    EXPECT_EQ(s.finalized_at, 1u);
    ASSERT_TRUE(outgoing(s).has_value());  // round t + 1
    StepReport r = receive_and_step(s, *net.scheme, net.inbox_for(0, all), net.table);
    EXPECT_FALSE(r.stepped);
    EXPECT_TRUE(s.exited);
    EXPECT_FALSE(outgoing(s).has_value());  // round t + 2
    EXPECT_TRUE(s.finalized);
}

TEST(Guardian, StopsAtLoopBound) {
    GuardianParams params;
    params.max_iterations = 2;
    Network net(BackendKind::Oracle, 4, params);
    GuardianState& s = net.nodes[0];
    for (int t = 0; t < 2; ++t) {
        ASSERT_TRUE(outgoing(s).has_value());
        receive_and_step(s, *net.scheme, {}, net.table);
    }
    EXPECT_FALSE(s.finalized);
    EXPECT_FALSE(outgoing(s).has_value());
    EXPECT_FALSE(receive_and_step(s, *net.scheme, {}, net.table).stepped);
}

TEST(Guardian, EmptyInboxOnlyAdvancesIteration) {
    Network net(BackendKind::Pairing, 4);
    GuardianState before = net.nodes[1];
    StepReport r = receive_and_step(net.nodes[1], *net.scheme, {}, net.table);
    EXPECT_EQ(r.verified, 0u);
    EXPECT_EQ(r.unique_signers, 1u);
    EXPECT_EQ(net.nodes[1].iteration, before.iteration + 1);
    before.iteration += 1;
    EXPECT_TRUE(same_state(before, net.nodes[1]));
}

TEST(Guardian, TamperedMessageChangesNothing) {
    Network net(BackendKind::Pairing, 4);
    auto all = net.round_messages();
    auto clean = net.inbox_for(0, all);

    std::vector<std::vector<GossipMessage>> bad_variants;
    {
        auto in = clean;
        net.scheme->multiply_into(in[1].sigma, crypto::AggregateSignature{crypto::type_a::generator()});
        bad_variants.push_back(in);
    }
    {
        auto in = clean;
        in[0].signers[3] = 2;  // claims a share twice
        bad_variants.push_back(in);
    }
    {
        auto in = clean;
        in[2].checkpoint.hash[0] ^= 1;
        bad_variants.push_back(in);
    }
    {
        auto in = clean;
        in[2].signers.pop_back();  // undecodable
        bad_variants.push_back(in);
    }
    {
        auto in = clean;
        in[1].signers.assign(4, 0);
        in[1].sigma = net.scheme->identity(4);  // all-zero vector, trivially valid signature
        bad_variants.push_back(in);
    }
    for (std::size_t v = 0; v < bad_variants.size(); ++v) {
        auto& bad = bad_variants[v];
        std::size_t culprit = 0;
        for (std::size_t k = 0; k < bad.size(); ++k) {
            if (bad[k].signers != clean[k].signers || !(bad[k].sigma == clean[k].sigma) ||
                !(bad[k].checkpoint == clean[k].checkpoint)) {
                culprit = k;
            }
        }
        std::vector<GossipMessage> without;
        for (std::size_t k = 0; k < clean.size(); ++k) {
            if (k != culprit) without.push_back(clean[k]);
        }
        GuardianState a = net.nodes[0];
        GuardianState b = net.nodes[0];
        StepReport ra = receive_and_step(a, *net.scheme, bad, net.table);
        StepReport rb = receive_and_step(b, *net.scheme, without, net.table);
        EXPECT_EQ(ra.discarded, 1u) << "variant " << v;
        EXPECT_EQ(ra.verified, rb.verified) << "variant " << v;
        EXPECT_TRUE(same_state(a, b)) << "variant " << v;
    }
}

TEST(Guardian, DiscardsNonNeighborsAndRepeats) {
    auto scheme = crypto::make_scheme(BackendKind::Oracle);
    crypto::Rng rng(5);
    std::vector<KeyPair> keys;
    std::vector<crypto::PublicKey> pks;
    for (int i = 0; i < 4; ++i) {
        keys.push_back(scheme->keygen(rng));
        pks.push_back(keys.back().pk);
    }
    CheckpointId m{100, {}};
    PairingTable table = scheme->precompute_pairings(pks, m);
    GuardianState s = init_guardian(*scheme, 0, 4, keys[0], {1, 2, 0, 2}, m);
    EXPECT_EQ(s.neighbors, (std::vector<std::size_t>{1, 2}));
    GuardianState s1 = init_guardian(*scheme, 1, 4, keys[1], {0}, m);
    GuardianState s3 = init_guardian(*scheme, 3, 4, keys[3], {0}, m);
    std::vector<GossipMessage> inbox{*outgoing(s1), *outgoing(s1), *outgoing(s3)};
    StepReport r = receive_and_step(s, *scheme, inbox, table);
    EXPECT_EQ(r.verified, 1u);
    EXPECT_EQ(r.discarded, 2u);
    EXPECT_EQ(r.unique_signers, 2u);
    EXPECT_EQ(r.max_entry, U256(1));
}

TEST(Guardian, HonestStateStaysValidAndMonotone) {
    Network net(BackendKind::Pairing, 5, GuardianParams{4, 0, false});
    std::vector<std::size_t> last(5, 1);
    for (int t = 0; t < 3; ++t) {
        auto all = net.round_messages();
        for (std::size_t i = 0; i < 5; ++i) {
            StepReport r = receive_and_step(net.nodes[i], *net.scheme, net.inbox_for(i, all), net.table);
            EXPECT_GE(r.unique_signers, last[i]);
            last[i] = r.unique_signers;
            EXPECT_TRUE(net.nodes[i].finalized);
            EXPECT_TRUE(net.scheme->verify_aggregate(net.nodes[i].held.sigma, net.nodes[i].held.signers,
                                                     net.table));
        }
    }
    // without the early exit the counts grow as 5^t
    EXPECT_EQ(max_entry(net.nodes[0].held.signers), U256(25));
}

TEST(GossipMessage, WireRoundTrip) {
    Network net(BackendKind::Pairing, 4);
    GossipMessage m = *outgoing(net.nodes[3]);
    auto bytes = serialize(m, *net.scheme);
    EXPECT_EQ(bytes.size(), wire_size(m, *net.scheme));
    EXPECT_EQ(bytes.size(), 1u + 8u + 32u + 65u + 4u);
    auto back = parse(bytes);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(back->sender, 3u);
    EXPECT_EQ(back->checkpoint, m.checkpoint);
    EXPECT_EQ(back->sigma, m.sigma);
    EXPECT_EQ(back->signers, m.signers);
    EXPECT_FALSE(parse(std::span(bytes).first(30)).has_value());
    auto garbled = bytes;
    garbled[1 + 8 + 32] = 0x07;
    EXPECT_FALSE(parse(garbled).has_value());

    Network oracle(BackendKind::Oracle, 4);
    GossipMessage mo = *outgoing(oracle.nodes[3]);
    EXPECT_EQ(wire_size(mo, *oracle.scheme), bytes.size());
}

}  // namespace
}  // namespace aggsig::protocol
