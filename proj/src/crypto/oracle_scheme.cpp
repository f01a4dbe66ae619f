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
#include <string_view>

#include "aggsig/errors.hpp"
#include "backends.hpp"

namespace aggsig::crypto {

namespace {

OracleTally& tally_of(AggregateSignature& sig) {
    auto* t = std::get_if<OracleTally>(&sig.value);
    if (t == nullptr) throw StructuralError("signature does not belong to the oracle backend");
    return *t;
}

const OracleTally& tally_of(const AggregateSignature& sig) {
    const auto* t = std::get_if<OracleTally>(&sig.value);
    if (t == nullptr) throw StructuralError("signature does not belong to the oracle backend");
    return *t;
}

}  // namespace

KeyPair OracleScheme::keygen(Rng& rng) const { return keypair_from_secret(random_scalar(rng)); }

KeyPair OracleScheme::keypair_from_secret(const U256& sk) const {
    if (sk.is_zero() || sk >= group_order()) throw StructuralError("secret key outside [1, p)");
    static constexpr std::string_view kTag = "aggsig-oracle-pk";
    auto sk_bytes = sk.to_be_bytes();
    Digest d = sha256({std::span(reinterpret_cast<const std::uint8_t*>(kTag.data()), kTag.size()),
                       sk_bytes});
    return {sk, PublicKey{{d.begin(), d.end()}}};
}

AggregateSignature OracleScheme::sign(const KeyPair& /*key*/, std::size_t signer, std::size_t n,
                                      const CheckpointId& checkpoint) const {
    return {OracleTally{checkpoint, false, init_signer_vector(signer, n)}};
}

PairingTable OracleScheme::precompute_pairings(std::span<const PublicKey> pks,
                                               const CheckpointId& checkpoint) const {
    return {checkpoint, pks.size(), {}};
}

bool OracleScheme::verify_aggregate(const AggregateSignature& sig, const SignerVector& c,
                                    const PairingTable& table) const {
    if (c.size() != table.n) {
        throw StructuralError("signer vector has " + std::to_string(c.size()) +
                              " entries, pairing table has " + std::to_string(table.n));
    }
    const auto* t = std::get_if<OracleTally>(&sig.value);
    if (t == nullptr || t->mixed) return false;
    if (t->checkpoint && *t->checkpoint != table.checkpoint) return false;
    return t->shares == c;
}

AggregateSignature OracleScheme::identity(std::size_t n) const {
    return {OracleTally{std::nullopt, false, SignerVector(n)}};
}

void OracleScheme::multiply_into(AggregateSignature& acc, const AggregateSignature& x) const {
    OracleTally& a = tally_of(acc);
    const OracleTally& b = tally_of(x);
    if (!a.checkpoint) {
        a.checkpoint = b.checkpoint;
    } else if (b.checkpoint && *a.checkpoint != *b.checkpoint) {
        a.mixed = true;
    }
    a.mixed = a.mixed || b.mixed;
    add_mod_p_inplace(a.shares, b.shares, group_order());
}

AggregateSignature OracleScheme::power(const AggregateSignature& sig, const U256& k) const {
    OracleTally out = tally_of(sig);
    const mpz_class p = to_mpz(group_order());
    const mpz_class factor = to_mpz(k);
    for (std::size_t u = 0; u < out.shares.size(); ++u) {
        U256 v = out.shares.at(u);
        if (v.is_zero()) continue;
        mpz_class prod = to_mpz(v) * factor;
        mpz_mod(prod.get_mpz_t(), prod.get_mpz_t(), p.get_mpz_t());
        out.shares.set(u, from_mpz(prod));
    }
    return {std::move(out)};
}

AggregateSignature OracleScheme::forge(Rng& rng, const SignerVector& claimed,
                                       const CheckpointId& checkpoint) const {
    OracleTally t{checkpoint, false, claimed};
    if (claimed.size() == 0) {
        t.mixed = true;
        return {std::move(t)};
    }
    // perturb one share by a nonzero amount so the tally cannot match the claim
    std::size_t u = std::uniform_int_distribution<std::size_t>(0, claimed.size() - 1)(rng);
    U256 delta = random_scalar(rng);
    t.shares.set(u, add_mod(claimed.at(u), delta, group_order()));
    return {std::move(t)};
}

std::vector<std::uint8_t> OracleScheme::serialize_signature(const AggregateSignature& sig) const {
    const OracleTally& t = tally_of(sig);
    std::vector<std::uint8_t> out(type_a::kPointBytes, 0);
    if (!t.checkpoint && !t.mixed && unique_signers(t.shares) == 0) return out;
    std::array<std::uint8_t, 40> msg{};
    if (t.checkpoint) msg = t.checkpoint->message_bytes();
    const std::array<std::uint8_t, 1> mixed{static_cast<std::uint8_t>(t.mixed ? 1 : 0)};
    auto shares = encode_compact(t.shares);
    Digest d = sha256({msg, mixed, shares});
    out[0] = 0x01;
    std::copy(d.begin(), d.end(), out.begin() + 1);
    return out;
}

}  // namespace aggsig::crypto
