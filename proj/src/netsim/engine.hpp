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

#include <cstdint>
#include <vector>

#include "aggsig/netsim/sim.hpp"

namespace aggsig::netsim::detail {

enum class Role : std::uint8_t {
    Honest,
    Byzantine,
    Absent,  // takes no part in this instance: sends nothing, never steps
};

struct Instance {
    const Topology* topology = nullptr;
    const crypto::SignatureScheme* scheme = nullptr;
    std::vector<Role> roles;
    Behavior behavior = Behavior::Silent;
    std::vector<crypto::KeyPair> keys;
    crypto::CheckpointId checkpoint;
    std::size_t iterations = 5;
    std::size_t threshold = 1;
    bool break_on_finalize = true;
    std::vector<PartitionWindow> partitions;
    std::size_t round_offset = 0;  // partition windows count rounds from here
    std::uint64_t seed = 0;
    bool record_trajectories = false;
};

/// Runs one instance. The returned SimRun has everything but `config` filled.
SimRun run_instance(const Instance& inst);

/// Independent generator for (seed, purpose, a, b).
std::mt19937_64 derive_rng(std::uint64_t seed, std::uint32_t purpose, std::uint64_t a = 0,
                           std::uint64_t b = 0);

/// Keys for guardians 0..n-1 drawn from the seed.
std::vector<crypto::KeyPair> make_keys(const crypto::SignatureScheme& scheme, std::size_t n,
                                       std::uint64_t seed);

}  // namespace aggsig::netsim::detail
