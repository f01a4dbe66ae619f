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

#include "aggsig/netsim/safety.hpp"

#include <algorithm>

#include "aggsig/errors.hpp"
#include "aggsig/netsim/sim.hpp"
#include "engine.hpp"

namespace aggsig::netsim {

namespace {

constexpr std::uint32_t kRoles = 0x726f6c65;
constexpr std::uint32_t kScenario = 0x7363656e;

}  // namespace

SafetyReport run_safety(const SafetyConfig& c) {
    if (c.n < 2) throw ConfigError("n must be at least 2");
    if (c.byzantine > c.n / 3) throw ConfigError("more than n/3 byzantine guardians");
    if (c.honest_on_a > c.n - c.byzantine) throw ConfigError("split exceeds the honest guardians");

    Topology topo = generate_topology(c.n, c.degree, c.seed);
    auto scheme = crypto::make_scheme(c.backend);

    std::vector<std::size_t> order(c.n);
    for (std::size_t i = 0; i < c.n; ++i) order[i] = i;
    auto rng = detail::derive_rng(c.seed, kRoles);
    std::shuffle(order.begin(), order.end(), rng);
    // 0: byzantine, 1: honest on A, 2: honest on B
    std::vector<int> camp(c.n, 2);
    for (std::size_t j = 0; j < c.byzantine; ++j) camp[order[j]] = 0;
    for (std::size_t j = 0; j < c.honest_on_a; ++j) camp[order[c.byzantine + j]] = 1;

    const std::size_t threshold = protocol::finalization_threshold(c.n, c.threshold_rule);
    const std::size_t iterations = c.iterations == 0 ? default_iterations(c.n, c.degree) : c.iterations;
    const auto keys = detail::make_keys(*scheme, c.n, c.seed);

    SafetyReport report;
    report.threshold = threshold;
    report.byzantine = c.byzantine;
    report.honest_a = c.honest_on_a;
    report.honest_b = c.n - c.byzantine - c.honest_on_a;

    auto run_side = [&](int side, const Digest& hash) {
        detail::Instance inst;
        inst.topology = &topo;
        inst.scheme = scheme.get();
        inst.roles.resize(c.n);
        for (std::size_t i = 0; i < c.n; ++i) {
            if (camp[i] == side) {
                inst.roles[i] = detail::Role::Honest;
            } else if (camp[i] == 0) {
                // double signers follow the protocol in this instance, or forge
                inst.roles[i] = c.forge ? detail::Role::Byzantine : detail::Role::Honest;
            } else {
                inst.roles[i] = detail::Role::Absent;
            }
        }
        inst.behavior = Behavior::FakeSignature;
        inst.keys = keys;
        inst.checkpoint = crypto::CheckpointId{100, hash};
        inst.iterations = iterations;
        inst.threshold = threshold;
        inst.seed = c.seed ^ static_cast<std::uint64_t>(side);
        SimRun run = detail::run_instance(inst);
        std::size_t finalized = 0;
        for (std::size_t i = 0; i < c.n; ++i) {
            if (camp[i] == side && run.finalized_round[i]) ++finalized;
        }
        return finalized;
    };

    std::array<std::uint8_t, 1> tag_a{'A'};
    std::array<std::uint8_t, 1> tag_b{'B'};
    std::array<std::uint8_t, 8> s{};
    for (int k = 0; k < 8; ++k) s[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(c.seed >> (8 * k));
    report.finalized_a = run_side(1, sha256({s, tag_a}));
    report.finalized_b = run_side(2, sha256({s, tag_b}));
    report.a_final = report.finalized_a > 0;
    report.b_final = report.finalized_b > 0;
    report.violation = report.a_final && report.b_final;
    report.count_exceeded = (report.a_final && report.honest_a + report.byzantine < threshold) ||
                            (report.b_final && report.honest_b + report.byzantine < threshold);
    return report;
}

SafetyConfig random_safety_scenario(std::uint64_t seed) {
    auto rng = detail::derive_rng(seed, kScenario);
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    SafetyConfig c;
    c.seed = seed;
    c.n = pick(4, 120);
    c.degree = pick(2, std::min<std::size_t>(c.n - 1, 16));
    c.byzantine = pick(c.n / 6, c.n / 3);
    const std::size_t honest = c.n - c.byzantine;
    const std::size_t threshold = protocol::finalization_threshold(c.n);
    if (pick(0, 1) == 0 && threshold >= c.byzantine && threshold - c.byzantine <= honest) {
        // A reachable with nothing to spare; B gets every other honest guardian
        c.honest_on_a = threshold - c.byzantine;
    } else {
        c.honest_on_a = pick(0, honest);
    }
    c.forge = pick(0, 3) == 0;
    c.iterations = pick(0, 1) == 0 ? 0 : pick(3, 10);
    return c;
}

}  // namespace aggsig::netsim
