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

// Synchronous round engine. Each round every guardian still in the loop
// emits one message to all neighbors; every message is checked once, then
// delivered (unless a partition cuts the link) and every honest guardian
// steps on its inbox. Byzantine guardians keep no protocol state.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aggsig/crypto/scheme.hpp"
#include "aggsig/netsim/topology.hpp"
#include "aggsig/protocol/guardian.hpp"

namespace aggsig::netsim {

enum class Behavior {
    Honest,
    Silent,           // sends nothing
    FakeSignature,    // random plausible signer vector under a forged signature
    VectorInflation,  // own signature raised to a random power k, claiming k * e_i
};

std::string_view behavior_name(Behavior b);
std::optional<Behavior> parse_behavior(std::string_view name);

/// Messages between the two sides are dropped in rounds first..last
/// (inclusive, counted from 1).
struct PartitionWindow {
    std::size_t first_round = 1;
    std::size_t last_round = 1;
    std::vector<std::uint8_t> side;  // one entry per guardian, 0 or 1

    [[nodiscard]] bool cuts(std::size_t round, std::size_t a, std::size_t b) const {
        return round >= first_round && round <= last_round && side[a] != side[b];
    }
};

/// Side assignment with round(fraction * n) guardians on side 1, chosen at random.
std::vector<std::uint8_t> random_bipartition(std::size_t n, double fraction, std::uint64_t seed);

/// max(5, ceil(2 * log_b(n)) + 1) for average degree b.
std::size_t default_iterations(std::size_t n, std::size_t degree);

struct SimConfig {
    std::size_t n = 1000;
    std::size_t degree = 20;
    double byz_fraction = 0.0;
    Behavior behavior = Behavior::Silent;
    std::size_t iterations = 0;  // L; 0 selects default_iterations
    std::uint64_t seed = 1;
    crypto::BackendKind backend = crypto::BackendKind::Oracle;
    std::vector<PartitionWindow> partitions;
    protocol::ThresholdRule threshold_rule = protocol::ThresholdRule::Strict;
    bool break_on_finalize = true;
    bool record_trajectories = false;
    std::uint64_t checkpoint_height = 100;
    std::optional<Digest> checkpoint_hash;  // derived from the seed when unset
    std::size_t timeout_ms = 1000;          // carried for deployments, unused by rounds
};

/// Throws ConfigError for infeasible parameters: n < 2, degree outside
/// [1, n), byz_fraction outside [0, 1/3] or rounding to more than n/3
/// guardians, Honest as the byzantine behavior with byz_fraction > 0,
/// malformed partitions.
void validate(const SimConfig& config);

/// Byzantine guardians: round(byz_fraction * n) indices drawn from the seed.
std::vector<std::uint8_t> byzantine_mask(const SimConfig& config);

struct RoundStats {
    std::size_t round = 0;
    std::size_t messages_sent = 0;     // one per (emission, neighbor)
    std::size_t bytes_sent = 0;
    std::size_t messages_dropped = 0;  // cut by a partition
    std::size_t messages_discarded = 0;
    std::size_t finalized_honest = 0;
    std::size_t max_message_bytes = 0;
    U256 max_entry;                    // over honest guardians
    std::vector<U256> node_max_entry;  // per guardian; zero for byzantine
};

struct SimRun {
    SimConfig config;
    std::size_t iterations = 0;
    std::size_t honest = 0;
    std::size_t byzantine = 0;
    std::size_t threshold = 0;
    std::vector<std::uint8_t> byzantine_mask;
    std::vector<RoundStats> rounds;
    std::optional<std::size_t> convergence_round;  // nullopt: never
    U256 max_entry;                                // largest honest entry seen in any round
    U256 max_entry_at_convergence;
    std::vector<std::size_t> messages_per_node;    // sent, per guardian
    std::vector<std::size_t> bytes_per_node;
    std::vector<std::optional<std::size_t>> finalized_round;  // per guardian
    std::size_t wrap_events = 0;
    std::size_t max_message_bytes = 0;
    double mean_degree = 0.0;
    /// [t][i] = signer vector of guardian i after t rounds, t = 0..iterations.
    /// Filled only with record_trajectories; byzantine rows stay empty.
    std::vector<std::vector<SignerVector>> trajectories;
    /// Final aggregates of honest guardians (empty entries for byzantine).
    std::vector<crypto::Aggregate> final_state;
    std::vector<crypto::PublicKey> public_keys;
    crypto::CheckpointId checkpoint;

    [[nodiscard]] bool converged() const { return convergence_round.has_value(); }
    [[nodiscard]] double honest_messages_mean() const;
    [[nodiscard]] double honest_messages_median() const;
    [[nodiscard]] double honest_bytes_mean() const;
};

/// Runs config on a freshly generated topology.
SimRun run_simulation(const SimConfig& config);

/// Runs config on the given topology (config.n and config.degree must match
/// the topology's size; degree only feeds the default L).
SimRun run_simulation(const SimConfig& config, const Topology& topology);

std::string to_json(const SimRun& run, bool include_rounds = true);

}  // namespace aggsig::netsim
