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
#include <set>
#include <vector>

#include "aggsig/crypto/scheme.hpp"
#include "aggsig/crypto/type_a.hpp"
#include "aggsig/digest.hpp"
#include "aggsig/errors.hpp"

namespace aggsig::crypto {
namespace {

using type_a::Point;

const Point& point_of(const AggregateSignature& sig) { return std::get<Point>(sig.value); }

Point pk_point(const PublicKey& pk) { return *type_a::parse_point(pk.bytes); }

CheckpointId checkpoint(std::uint64_t height, std::uint8_t tag) {
    Digest h{};
    h.fill(tag);
    return {height, h};
}

mpz_class random_mpz(Rng& rng) { return to_mpz(random_scalar(rng)); }

// e(sigma, g) against the product over u of e(H(pk_u, m), pk_u)^{c_u}, pairing every term afresh.
bool verify_inline(const AggregateSignature& sig, const SignerVector& c,
                   const std::vector<PublicKey>& pks, const CheckpointId& m) {
    type_a::Fq2 rhs = type_a::gt_one();
    for (std::size_t u = 0; u < c.size(); ++u) {
        if (c.at(u).is_zero()) continue;
        Point pk = pk_point(pks[u]);
        rhs = type_a::gt_mul(rhs, type_a::gt_pow(type_a::pairing(hash_to_group(pks[u], m), pk),
                                                 to_mpz(c.at(u))));
    }
    return type_a::pairing(point_of(sig), type_a::generator()) == rhs;
}

// H(g, height || zero hash) at heights 100 and 200, recorded from this implementation
constexpr const char* kH100 =
    "024b5030cf90234a60b8a1213181dba94d7202643af0815d43fb3702d7b7a4348c"
    "acb7392be660d80393cf918d36a8ad59ca8f34249bb7d6dfb352a938fa7302be";
constexpr const char* kH200 =
    "0203f180c5d37625867d373c090406991dfa621824ba6b669527b7b69b5d02ae76"
    "c39c3ee716e95ddd10248ad6dab8254147ee67d6f212313a95d73d047dc2ed5e";

class PairingBackend : public ::testing::Test {
  protected:
    std::unique_ptr<SignatureScheme> scheme = make_scheme(BackendKind::Pairing);
};

TEST(TypeA, GroupParameters) {
    EXPECT_GE(mpz_sizeinbase(type_a::group_order().get_mpz_t(), 2), 170u);
    EXPECT_NE(mpz_probab_prime_p(type_a::group_order().get_mpz_t(), 40), 0);
    EXPECT_NE(mpz_probab_prime_p(type_a::field_prime().get_mpz_t(), 40), 0);
    EXPECT_EQ(type_a::field_prime() % 4, 3);
    EXPECT_EQ(type_a::cofactor() * type_a::group_order(), type_a::field_prime() + 1);
    EXPECT_TRUE(type_a::in_group(type_a::generator()));
    EXPECT_TRUE(type_a::mul(type_a::generator(), type_a::group_order()).infinity);
    EXPECT_EQ(to_mpz(group_order()), type_a::group_order());
}

TEST(TypeA, BilinearAndNonDegenerate) {
    Rng rng(1000);
    const Point& g = type_a::generator();
    const type_a::Fq2 egg = type_a::pairing(g, g);
    EXPECT_FALSE(egg == type_a::gt_one());
    EXPECT_TRUE(type_a::gt_pow(egg, type_a::group_order()) == type_a::gt_one());
    for (int i = 0; i < 1000; ++i) {
        mpz_class a = random_mpz(rng);
        mpz_class b = random_mpz(rng);
        type_a::Fq2 lhs = type_a::pairing(type_a::mul(g, a), type_a::mul(g, b));
        mpz_class ab = (a * b) % type_a::group_order();
        ASSERT_TRUE(lhs == type_a::gt_pow(egg, ab)) << "sample " << i;
        ASSERT_FALSE(lhs == type_a::gt_one());
    }
}

TEST(TypeA, PointEncoding) {
    Rng rng(5);
    auto id = type_a::serialize_point(Point::identity());
    EXPECT_EQ(id[0], 0x00);
    EXPECT_TRUE(type_a::parse_point(id)->infinity);
    for (int i = 0; i < 20; ++i) {
        Point p = type_a::mul(type_a::generator(), random_mpz(rng));
        auto bytes = type_a::serialize_point(p);
        ASSERT_EQ(bytes.size(), type_a::kPointBytes);
        EXPECT_TRUE(*type_a::parse_point(bytes) == p);
        bytes[0] ^= 0x01;  // other root: -p, still in the group
        EXPECT_TRUE(*type_a::parse_point(bytes) == type_a::negate(p));
    }
    auto bad = type_a::serialize_point(type_a::generator());
    bad[0] = 0x05;
    EXPECT_FALSE(type_a::parse_point(bad).has_value());
    EXPECT_FALSE(type_a::parse_point(std::span(bad).first(10)).has_value());
    EXPECT_EQ(type_a::serialize_scalar(type_a::group_order()).size(), type_a::kScalarBytes);
    EXPECT_EQ(type_a::serialize_gt(type_a::gt_one()).size(), type_a::kGtBytes);
}

TEST_F(PairingBackend, KeygenExamples) {
    KeyPair one = scheme->keypair_from_secret(U256(1));
    EXPECT_TRUE(pk_point(one.pk) == type_a::generator());
    U256 last = from_mpz(type_a::group_order() - 1);
    KeyPair top = scheme->keypair_from_secret(last);
    EXPECT_TRUE(type_a::add(pk_point(top.pk), type_a::generator()).infinity);
    EXPECT_THROW(scheme->keypair_from_secret(U256(0)), StructuralError);
    EXPECT_THROW(scheme->keypair_from_secret(group_order()), StructuralError);

    Rng a(42), b(42);
    KeyPair k1 = scheme->keygen(a);
    KeyPair k2 = scheme->keygen(b);
    EXPECT_EQ(k1.sk, k2.sk);
    EXPECT_EQ(k1.pk, k2.pk);
    EXPECT_TRUE(pk_point(k1.pk) == type_a::mul(type_a::generator(), to_mpz(k1.sk)));
}

TEST_F(PairingBackend, HashToGroup) {
    Rng rng(9);
    KeyPair k = scheme->keygen(rng);
    CheckpointId m = checkpoint(100, 0xab);
    Point h1 = hash_to_group(k.pk, m);
    EXPECT_TRUE(h1 == hash_to_group(k.pk, m));
    EXPECT_TRUE(type_a::in_group(h1));
    EXPECT_FALSE(h1.infinity);
    EXPECT_FALSE(h1 == hash_to_group(k.pk, checkpoint(200, 0xab)));
    EXPECT_FALSE(h1 == hash_to_group(k.pk, checkpoint(100, 0xac)));

    auto input = hash_input(k.pk, m);
    ASSERT_EQ(input.size(), 4u + 65u + 40u);
    EXPECT_EQ(input[3], 65);
    EXPECT_EQ(input[4 + 65 + 7], 100);
}

TEST_F(PairingBackend, HashToGroupFixedVectors) {
    KeyPair g = scheme->keypair_from_secret(U256(1));
    auto hex = [&](std::uint64_t height) {
        return to_hex(type_a::serialize_point(hash_to_group(g.pk, checkpoint(height, 0))));
    };
    EXPECT_EQ(hex(100), kH100);
    EXPECT_EQ(hex(200), kH200);
}

TEST_F(PairingBackend, DistinctKeysGiveDistinctHashes) {
    Rng rng(2024);
    CheckpointId m = checkpoint(300, 0x11);
    std::set<std::string> seen;
    for (int i = 0; i < 1000; ++i) {
        // random pk bytes: pk = g^k for random k
        PublicKey pk{std::vector<std::uint8_t>(65)};
        auto bytes = type_a::serialize_point(type_a::mul(type_a::generator(), random_mpz(rng)));
        std::copy(bytes.begin(), bytes.end(), pk.bytes.begin());
        ASSERT_TRUE(seen.insert(to_hex(type_a::serialize_point(hash_to_group(pk, m)))).second);
    }
}

TEST_F(PairingBackend, SignAndVerify) {
    Rng rng(17);
    const std::size_t n = 4;
    std::vector<KeyPair> keys;
    std::vector<PublicKey> pks;
    for (std::size_t i = 0; i < n; ++i) {
        keys.push_back(scheme->keygen(rng));
        pks.push_back(keys.back().pk);
    }
    CheckpointId m = checkpoint(100, 0x42);
    PairingTable table = scheme->precompute_pairings(pks, m);

    KeyPair one = scheme->keypair_from_secret(U256(1));
    EXPECT_TRUE(point_of(scheme->sign(one, 0, n, m)) == hash_to_group(one.pk, m));

    AggregateSignature s0 = scheme->sign(keys[0], 0, n, m);
    AggregateSignature s1 = scheme->sign(keys[1], 1, n, m);
    SignerVector e0 = init_signer_vector(0, n);
    EXPECT_TRUE(scheme->verify_aggregate(s0, e0, table));
    EXPECT_FALSE(scheme->verify_aggregate(s0, init_signer_vector(1, n), table));

    // signature from sk_1 checked as if from pk_0
    EXPECT_FALSE(scheme->verify_aggregate(scheme->sign(keys[1], 0, n, m), e0, table));

    AggregateSignature tampered = s0;
    scheme->multiply_into(tampered, AggregateSignature{type_a::generator()});
    EXPECT_FALSE(scheme->verify_aggregate(tampered, e0, table));

    SignerVector two(n);
    two.set(0, U256(2));
    EXPECT_TRUE(scheme->verify_aggregate(scheme->power(s0, U256(2)), two, table));

    EXPECT_TRUE(scheme->verify_aggregate(scheme->identity(n), SignerVector(n), table));
    EXPECT_THROW(scheme->verify_aggregate(s0, SignerVector(n + 1), table), StructuralError);

    Aggregate own{s0, e0};
    Aggregate same = aggregate(*scheme, own, {});
    EXPECT_EQ(same.sigma, own.sigma);
    EXPECT_EQ(same.signers, own.signers);

    std::vector<Aggregate> in{{s1, init_signer_vector(1, n)}};
    Aggregate pair = aggregate(*scheme, own, in);
    SignerVector expect(n);
    expect.set(0, U256(1));
    expect.set(1, U256(1));
    EXPECT_EQ(pair.signers, expect);
    EXPECT_TRUE(scheme->verify_aggregate(pair.sigma, pair.signers, table));

    std::vector<Aggregate> self{own};
    Aggregate doubled = aggregate(*scheme, own, self);
    EXPECT_EQ(doubled.signers, two);
    EXPECT_TRUE(scheme->verify_aggregate(doubled.sigma, doubled.signers, table));
}

TEST_F(PairingBackend, RepeatedSharesRoundTrip) {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 1 + rng() % 8;
        std::vector<KeyPair> keys;
        std::vector<PublicKey> pks;
        for (std::size_t i = 0; i < n; ++i) {
            keys.push_back(scheme->keygen(rng));
            pks.push_back(keys.back().pk);
        }
        CheckpointId m = checkpoint(100 * (trial + 1), static_cast<std::uint8_t>(trial));
        PairingTable table = scheme->precompute_pairings(pks, m);
        AggregateSignature sigma = scheme->identity(n);
        SignerVector c(n);
        for (std::size_t u = 0; u < n; ++u) {
            if (rng() % 3 == 0) continue;
            std::uint64_t k = 1 + rng() % 64;
            scheme->multiply_into(sigma, scheme->power(scheme->sign(keys[u], u, n, m), U256(k)));
            c.set(u, U256(k));
        }
        EXPECT_TRUE(scheme->verify_aggregate(sigma, c, table));
    }
}

TEST_F(PairingBackend, TableMatchesInlinePairings) {
    Rng rng(8);
    const std::size_t n = 8;
    std::vector<KeyPair> keys;
    std::vector<PublicKey> pks;
    for (std::size_t i = 0; i < n; ++i) {
        keys.push_back(scheme->keygen(rng));
        pks.push_back(keys.back().pk);
    }
    CheckpointId m = checkpoint(500, 0x5a);
    PairingTable table = scheme->precompute_pairings(pks, m);
    for (std::size_t u = 0; u < n; ++u) {
        EXPECT_TRUE(table.entries[u] == type_a::pairing(hash_to_group(pks[u], m), pk_point(pks[u])));
    }
    std::vector<AggregateSignature> singles;
    for (std::size_t u = 0; u < n; ++u) singles.push_back(scheme->sign(keys[u], u, n, m));
    std::size_t accepted = 0;
    for (int trial = 0; trial < 100; ++trial) {
        AggregateSignature sigma = scheme->identity(n);
        SignerVector c(n);
        for (std::size_t u = 0; u < n; ++u) {
            std::uint64_t k = rng() % 4;
            if (k == 0) continue;
            scheme->multiply_into(sigma, scheme->power(singles[u], U256(k)));
            c.set(u, U256(k));
        }
        if (trial % 2 == 1) {
            std::size_t u = rng() % n;
            c.set(u, add_mod(c.at(u), U256(1), group_order()));
        }
        bool fast = scheme->verify_aggregate(sigma, c, table);
        ASSERT_EQ(fast, verify_inline(sigma, c, pks, m)) << "trial " << trial;
        accepted += fast;
    }
    EXPECT_EQ(accepted, 50u);
}

TEST_F(PairingBackend, RekeyingChangesEveryEntry) {
    Rng rng(12);
    std::vector<PublicKey> pks;
    for (int i = 0; i < 5; ++i) pks.push_back(scheme->keygen(rng).pk);
    PairingTable a = scheme->precompute_pairings(pks, checkpoint(100, 1));
    PairingTable b = scheme->precompute_pairings(pks, checkpoint(200, 1));
    ASSERT_EQ(a.entries.size(), 5u);
    for (std::size_t u = 0; u < 5; ++u) EXPECT_FALSE(a.entries[u] == b.entries[u]);

    PairingTable single = scheme->precompute_pairings(std::span(pks).first(1), checkpoint(100, 1));
    ASSERT_EQ(single.entries.size(), 1u);
    EXPECT_TRUE(single.entries[0] == a.entries[0]);
}

TEST_F(PairingBackend, SignatureWireFormat) {
    Rng rng(4);
    KeyPair k = scheme->keygen(rng);
    AggregateSignature s = scheme->sign(k, 0, 1, checkpoint(100, 3));
    auto bytes = scheme->serialize_signature(s);
    EXPECT_EQ(bytes.size(), scheme->signature_size());
    auto back = parse_pairing_signature(bytes);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, s);
}

TEST(OracleBackend, AgreesWithPairingOnHonestAggregates) {
    auto pairing = make_scheme(BackendKind::Pairing);
    auto oracle = make_scheme(BackendKind::Oracle);
    Rng rng(99);
    const std::size_t n = 6;
    std::vector<KeyPair> kp, ko;
    std::vector<PublicKey> pp, po;
    for (std::size_t i = 0; i < n; ++i) {
        U256 sk = random_scalar(rng);
        kp.push_back(pairing->keypair_from_secret(sk));
        ko.push_back(oracle->keypair_from_secret(sk));
        pp.push_back(kp.back().pk);
        po.push_back(ko.back().pk);
    }
    CheckpointId m = checkpoint(100, 7);
    PairingTable tp = pairing->precompute_pairings(pp, m);
    PairingTable to = oracle->precompute_pairings(po, m);
    for (int trial = 0; trial < 30; ++trial) {
        Aggregate ap{pairing->identity(n), SignerVector(n)};
        Aggregate ao{oracle->identity(n), SignerVector(n)};
        for (std::size_t u = 0; u < n; ++u) {
            std::uint64_t k = rng() % 3;
            for (std::uint64_t r = 0; r < k; ++r) {
                std::vector<Aggregate> sp{{pairing->sign(kp[u], u, n, m), init_signer_vector(u, n)}};
                std::vector<Aggregate> so{{oracle->sign(ko[u], u, n, m), init_signer_vector(u, n)}};
                ap = aggregate(*pairing, ap, sp);
                ao = aggregate(*oracle, ao, so);
            }
        }
        SignerVector claim = ap.signers;
        if (trial % 3 == 0) claim.set(trial % n, add_mod(claim.at(trial % n), U256(1), group_order()));
        EXPECT_EQ(pairing->verify_aggregate(ap.sigma, claim, tp),
                  oracle->verify_aggregate(ao.sigma, claim, to));
    }
}

TEST(OracleBackend, RejectsOtherCheckpointsAndForgeries) {
    auto oracle = make_scheme(BackendKind::Oracle);
    Rng rng(1);
    std::vector<KeyPair> keys;
    std::vector<PublicKey> pks;
    for (int i = 0; i < 3; ++i) {
        keys.push_back(oracle->keygen(rng));
        pks.push_back(keys.back().pk);
    }
    CheckpointId m = checkpoint(100, 1);
    PairingTable t = oracle->precompute_pairings(pks, m);
    EXPECT_TRUE(oracle->verify_aggregate(oracle->sign(keys[1], 1, 3, m), init_signer_vector(1, 3), t));
    EXPECT_FALSE(oracle->verify_aggregate(oracle->sign(keys[1], 1, 3, checkpoint(100, 2)),
                                          init_signer_vector(1, 3), t));
    SignerVector c = init_signer_vector(2, 3);
    EXPECT_FALSE(oracle->verify_aggregate(oracle->forge(rng, c, m), c, t));
}

TEST(Checkpoint, HeightMustMatchInterval) {
    Digest h{};
    EXPECT_NO_THROW(make_checkpoint(200, h, 100));
    EXPECT_THROW(make_checkpoint(150, h, 100), StructuralError);
    auto bytes = make_checkpoint(256, h, 1).message_bytes();
    EXPECT_EQ(bytes[6], 1);
    EXPECT_EQ(bytes[7], 0);
}

}  // namespace
}  // namespace aggsig::crypto
