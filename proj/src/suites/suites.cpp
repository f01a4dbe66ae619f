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

#include "aggsig/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aggsig/analysis/omega.hpp"
#include "aggsig/crypto/scheme.hpp"
#include "aggsig/netsim/safety.hpp"
#include "aggsig/netsim/schedule.hpp"
#include "aggsig/netsim/sim.hpp"

namespace aggsig::suites {

namespace {

using crypto::BackendKind;
using netsim::Behavior;
using netsim::SimConfig;

std::string describe(const SimConfig& c) {
    std::ostringstream s;
    s << "n=" << c.n << " degree=" << c.degree << " byz=" << c.byz_fraction << " behavior="
      << netsim::behavior_name(c.behavior) << " seed=" << c.seed;
    return s.str();
}

crypto::Rng rng_for(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return crypto::Rng(seq);
}

}  // namespace

SuiteResult safety(std::size_t scenarios, std::uint64_t seed) {
    SuiteResult r{"safety", true, 0, {}};
    std::size_t a_only = 0;
    std::size_t b_only = 0;
    std::size_t neither = 0;
    for (std::size_t k = 0; k < scenarios; ++k) {
        auto cfg = netsim::random_safety_scenario(seed * 1000003 + k);
        auto rep = netsim::run_safety(cfg);
        ++r.cases;
        if (rep.violation) {
            r.fail("both hashes finalized: n=" + std::to_string(cfg.n) + " byz=" +
                   std::to_string(cfg.byzantine) + " seed=" + std::to_string(cfg.seed));
        }
        if (rep.count_exceeded) {
            r.fail("hash finalized with fewer possible signers than the threshold, seed=" +
                   std::to_string(cfg.seed));
        }
        if (rep.a_final && !rep.b_final) ++a_only;
        if (rep.b_final && !rep.a_final) ++b_only;
        if (!rep.a_final && !rep.b_final) ++neither;
    }
    r.notes.push_back(std::to_string(r.cases) + " scenarios: " + std::to_string(a_only) +
                      " finalized A only, " + std::to_string(b_only) + " B only, " +
                      std::to_string(neither) + " neither");
    return r;
}

SuiteResult liveness(std::size_t seeds, std::uint64_t seed) {
    SuiteResult r{"liveness", true, 0, {}};
    for (std::size_t n : {300UL, 1000UL}) {
        const double below_third = static_cast<double>((n + 2) / 3 - 1) / static_cast<double>(n);
        for (double byz : {0.0, 0.1, 0.2, 0.3, below_third}) {
            for (Behavior b : {Behavior::Silent, Behavior::FakeSignature}) {
                for (std::size_t s = 0; s < seeds; ++s) {
                    SimConfig c;
                    c.n = n;
                    c.degree = 20;
                    c.byz_fraction = byz;
                    c.behavior = b;
                    c.seed = seed + s;
                    auto run = netsim::run_simulation(c);
                    ++r.cases;
                    if (!run.converged() || *run.convergence_round > run.iterations) {
                        r.fail("no convergence within L=" + std::to_string(run.iterations) + ": " +
                               describe(c));
                    }
                }
            }
        }
    }
    // At exactly n/3 byzantine guardians with 3 | n the honest ones number
    // 2n/3, one short of the strict threshold; finalization must not happen.
    SimConfig c;
    c.n = 300;
    c.degree = 20;
    c.byz_fraction = 1.0 / 3.0;
    c.seed = seed;
    auto run = netsim::run_simulation(c);
    ++r.cases;
    if (run.rounds.empty() || run.rounds.back().finalized_honest != 0) {
        r.fail("honest guardians finalized with only 2n/3 possible signers");
    }
    r.notes.push_back(std::to_string(r.cases) + " runs");
    return r;
}

SuiteResult oracle(std::size_t topologies, std::uint64_t seed) {
    SuiteResult r{"oracle", true, 0, {}};
    auto rng = rng_for(seed, 0x6f72);
    std::size_t comparisons = 0;
    for (std::size_t k = 0; k < topologies; ++k) {
        SimConfig c;
        c.n = std::uniform_int_distribution<std::size_t>(4, 32)(rng);
        c.degree = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(c.n - 1, 6))(rng);
        c.seed = rng();
        c.iterations = 5;
        c.break_on_finalize = false;
        c.record_trajectories = true;
        auto topo = netsim::generate_topology(c.n, c.degree, c.seed);
        auto run = netsim::run_simulation(c, topo);
        auto omega = analysis::build_omega(topo);
        auto rep = analysis::oracle_check(run, omega);
        ++r.cases;
        comparisons += rep.comparisons;
        if (!rep.equal || rep.comparisons != c.n * c.n * (c.iterations + 1)) {
            r.fail("trajectory differs from Omega^t e_k: " + describe(c));
        }
        if (run.wrap_events != 0) r.fail("reduction mod p in a counting run: " + describe(c));

        auto bound = analysis::spectral_bound(omega, c.iterations);
        for (std::size_t origin = 0; origin < c.n; ++origin) {
            for (std::size_t t = 0; t <= c.iterations; ++t) {
                auto x = analysis::propagate_counts(omega, origin, t);
                mpz_class biggest = *std::max_element(x.begin(), x.end());
                double limit = std::pow(bound.lambda_max, static_cast<double>(t)) * static_cast<double>(c.n);
                if (biggest.get_d() > limit * (1 + 1e-9)) {
                    r.fail("entry above lambda_max^t * n: " + describe(c));
                }
            }
        }
    }
    r.notes.push_back(std::to_string(comparisons) + " entries compared exactly");
    return r;
}

SuiteResult crypto(std::uint64_t seed, std::size_t tamperings) {
    namespace ta = crypto::type_a;
    SuiteResult r{"crypto", true, 0, {}};
    auto scheme = crypto::make_scheme(BackendKind::Pairing);
    auto rng = rng_for(seed, 0x6372);
    const U256& p = crypto::group_order();
    const mpz_class r_order = ta::group_order();

    // bilinearity and non-degeneracy
    const ta::Point& g = ta::generator();
    const ta::Fq2 egg = ta::pairing(g, g);
    if (egg == ta::gt_one()) r.fail("e(g, g) is the identity");
    for (int k = 0; k < 10; ++k) {
        mpz_class a = crypto::to_mpz(crypto::random_scalar(rng));
        mpz_class b = crypto::to_mpz(crypto::random_scalar(rng));
        mpz_class ab = (a * b) % r_order;
        ++r.cases;
        if (ta::pairing(ta::mul(g, a), ta::mul(g, b)) != ta::gt_pow(egg, ab)) r.fail("bilinearity");
    }

    // round trips: prod sigma_u^{k_u} against (k_u)
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        crypto::CheckpointId cp{100, {}};
        cp.hash[0] = static_cast<std::uint8_t>(trial);
        std::vector<crypto::KeyPair> keys;
        std::vector<crypto::PublicKey> pks;
        for (std::size_t i = 0; i < n; ++i) {
            keys.push_back(scheme->keygen(rng));
            pks.push_back(keys.back().pk);
        }
        auto table = scheme->precompute_pairings(pks, cp);
        auto sigma = scheme->identity(n);
        SignerVector c(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::bernoulli_distribution(0.6)(rng) || i == 0) {
                std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(1, 64)(rng);
                scheme->multiply_into(sigma, scheme->power(scheme->sign(keys[i], i, n, cp), U256(k)));
                c.set(i, U256(k));
            }
        }
        ++r.cases;
        if (!scheme->verify_aggregate(sigma, c, table)) r.fail("aggregate round trip");
    }

    // full protocol run on the real backend
    SimConfig c;
    c.n = 24;
    c.degree = 5;
    c.byz_fraction = 4.0 / 24.0;
    c.behavior = Behavior::FakeSignature;
    c.backend = BackendKind::Pairing;
    c.seed = seed;
    auto run = netsim::run_simulation(c);
    ++r.cases;
    if (!run.converged()) r.fail("pairing-backend run did not converge: " + describe(c));
    const auto& pks = run.public_keys;
    const crypto::CheckpointId cp = run.checkpoint;
    const auto table = scheme->precompute_pairings(pks, cp);
    std::vector<std::size_t> honest;
    for (std::size_t i = 0; i < c.n; ++i) {
        if (run.byzantine_mask[i]) continue;
        honest.push_back(i);
        const auto& agg = run.final_state[i];
        ++r.cases;
        if (!scheme->verify_aggregate(agg.sigma, agg.signers, table)) {
            r.fail("honest guardian " + std::to_string(i) + " holds an aggregate that fails verification");
        }
    }

    // single-element tamperings of honest aggregates
    std::size_t rejected = 0;
    for (std::size_t k = 0; k < tamperings; ++k) {
        const auto& agg = run.final_state[honest[k % honest.size()]];
        bool accepted = true;
        switch (k % 3) {
            case 0: {
                auto sigma = agg.sigma;
                scheme->multiply_into(sigma, crypto::AggregateSignature{ta::mul(g, crypto::to_mpz(crypto::random_scalar(rng)))});
                accepted = scheme->verify_aggregate(sigma, agg.signers, table);
                break;
            }
            case 1: {
                SignerVector tampered = agg.signers;
                std::size_t u = std::uniform_int_distribution<std::size_t>(0, c.n - 1)(rng);
                U256 delta = U256(std::uniform_int_distribution<std::uint64_t>(1, 1000)(rng));
                tampered.set(u, add_mod(tampered.at(u), delta, p));
                accepted = scheme->verify_aggregate(agg.sigma, tampered, table);
                break;
            }
            default: {
                crypto::CheckpointId other = cp;
                std::size_t bit = std::uniform_int_distribution<std::size_t>(0, 255)(rng);
                other.hash[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
                auto other_table = scheme->precompute_pairings(pks, other);
                accepted = scheme->verify_aggregate(agg.sigma, agg.signers, other_table);
                break;
            }
        }
        ++r.cases;
        if (accepted) {
            r.fail("tampered aggregate accepted (kind " + std::to_string(k % 3) + ")");
        } else {
            ++rejected;
        }
    }
    r.notes.push_back(std::to_string(honest.size()) + " honest aggregates verified, " +
                      std::to_string(rejected) + "/" + std::to_string(tamperings) +
                      " tamperings rejected");
    return r;
}

SuiteResult backend_agreement(std::uint64_t seed) {
    SuiteResult r{"backends", true, 0, {}};
    struct Case {
        std::size_t n, degree;
        double byz;
        Behavior behavior;
        bool brk;
        bool partition;
    };
    const Case cases[] = {
        {16, 4, 0.0, Behavior::Silent, true, false},
        {16, 5, 0.25, Behavior::FakeSignature, true, false},
        {12, 3, 0.25, Behavior::VectorInflation, true, false},
        {16, 4, 0.0, Behavior::Silent, false, false},
        {14, 4, 0.2, Behavior::Silent, true, true},
    };
    for (std::size_t k = 0; k < std::size(cases); ++k) {
        const Case& cs = cases[k];
        SimConfig c;
        c.n = cs.n;
        c.degree = cs.degree;
        c.byz_fraction = cs.byz;
        c.behavior = cs.behavior;
        c.seed = seed + k;
        c.break_on_finalize = cs.brk;
        c.record_trajectories = true;
        if (cs.partition) c.partitions.push_back({1, 2, netsim::random_bipartition(c.n, 0.5, c.seed)});
        c.backend = BackendKind::Oracle;
        auto oracle_run = netsim::run_simulation(c);
        c.backend = BackendKind::Pairing;
        auto pairing_run = netsim::run_simulation(c);
        ++r.cases;
        if (oracle_run.trajectories != pairing_run.trajectories) r.fail("trajectories differ: " + describe(c));
        if (oracle_run.convergence_round != pairing_run.convergence_round ||
            oracle_run.finalized_round != pairing_run.finalized_round) {
            r.fail("convergence differs: " + describe(c));
        }
    }
    r.notes.push_back(std::to_string(r.cases) + " configurations compared");
    return r;
}

SuiteResult leapfrog(std::size_t seeds, std::uint64_t seed) {
    SuiteResult r{"leapfrog", true, 0, {}};
    for (std::size_t s = 0; s < seeds; ++s) {
        auto cfg = netsim::leapfrog_config(seed + s);
        auto rep = netsim::run_schedule(cfg);
        ++r.cases;
        const std::string tag = " (seed " + std::to_string(seed + s) + ")";
        if (!rep.chain_intact || rep.outcomes.size() != 2) {
            r.fail("schedule did not run" + tag);
            continue;
        }
        const auto t1 = rep.outcomes[0].height;
        const auto t2 = rep.outcomes[1].height;
        if (rep.outcomes[0].finalized) r.fail("checkpoint T finalized across the partition" + tag);
        if (!rep.outcomes[1].finalized) r.fail("checkpoint 2T not finalized after the heal" + tag);
        if (rep.ledger.status(t1) != chain::CheckpointStatus::Skipped) r.fail("checkpoint T not skipped" + tag);
        if (rep.ledger.status(t2) != chain::CheckpointStatus::Finalized) r.fail("checkpoint 2T not finalized" + tag);
        if (!rep.prefix_closed_throughout) r.fail("finalized set not a prefix" + tag);
        for (std::uint64_t h = 0; h <= t2; ++h) {
            if (!rep.ledger.block_final(h)) {
                r.fail("block " + std::to_string(h) + " below 2T not final" + tag);
                break;
            }
        }
        if (rep.ledger.block_final(t2 + 1)) r.fail("block above 2T final" + tag);
    }
    return r;
}

std::vector<std::string_view> suite_names() {
    return {"safety", "liveness", "oracle", "crypto", "backends", "leapfrog"};
}

std::optional<SuiteResult> run_named(std::string_view name, std::uint64_t seed) {
    if (name == "safety") return safety(1000, seed);
    if (name == "liveness") return liveness(5, seed);
    if (name == "oracle") return oracle(20, seed);
    if (name == "crypto") return crypto(seed);
    if (name == "backends") return backend_agreement(seed);
    if (name == "leapfrog") return leapfrog(5, seed);
    return std::nullopt;
}

}  // namespace aggsig::suites
