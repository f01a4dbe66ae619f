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

// Votes on successive checkpoints of one chain. Checkpoint j runs a full
// protocol instance after checkpoint j-1; partition windows count rounds
// across the whole schedule, so a window can span several checkpoints.
// A checkpoint is recorded finalized when any honest guardian finalizes it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "aggsig/chain/chain.hpp"
#include "aggsig/netsim/sim.hpp"

namespace aggsig::netsim {

struct ScheduleConfig {
    SimConfig base;                       // n, degree, byzantine model, seed, backend
    std::size_t checkpoints = 2;
    std::uint64_t interval = chain::kDefaultInterval;
    std::vector<std::size_t> iterations;  // per checkpoint; missing or 0 uses the default
};

struct CheckpointOutcome {
    std::uint64_t height = 0;
    Digest hash{};
    std::size_t first_round = 0;  // schedule round of this vote's round 1
    std::size_t iterations = 0;
    std::size_t honest_finalized = 0;
    bool finalized = false;
    std::optional<std::size_t> convergence_round;
    bool prefix_closed_after = false;
};

struct ScheduleReport {
    std::vector<chain::BlockHeader> chain;
    bool chain_intact = false;
    chain::FinalizationLedger ledger;
    std::vector<CheckpointOutcome> outcomes;
    bool prefix_closed_throughout = false;
};

ScheduleReport run_schedule(const ScheduleConfig& config);

/// 64 guardians, degree 8, split in half for rounds 1-3. The vote on T gets
/// exactly those three rounds; the vote on 2T starts after the heal.
ScheduleConfig leapfrog_config(std::uint64_t seed);

}  // namespace aggsig::netsim
