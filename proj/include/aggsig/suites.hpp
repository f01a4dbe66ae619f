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

// Property suites shared by the command line tool and the acceptance tests.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aggsig::suites {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::vector<std::string> notes;  // one line per finding or summary figure

    void fail(std::string why) {
        passed = false;
        notes.push_back("FAIL " + std::move(why));
    }
};

/// Randomized equivocation scenarios: no two conflicting hashes finalized,
/// and no hash finalized by fewer possible signers than the threshold.
SuiteResult safety(std::size_t scenarios = 1000, std::uint64_t seed = 1);

/// Every honest guardian finalizes within L when byzantine guardians are
/// fewer than n/3, for both byzantine behaviors.
SuiteResult liveness(std::size_t seeds = 5, std::uint64_t seed = 1);

/// Simulated signer vectors against Omega^t e_k on random small topologies.
SuiteResult oracle(std::size_t topologies = 20, std::uint64_t seed = 1);

/// Real-pairing checks: group laws, sign/aggregate/verify round trips, a full
/// protocol run whose honest aggregates all verify, and tampered aggregates
/// that all fail.
SuiteResult crypto(std::uint64_t seed = 1, std::size_t tamperings = 100);

/// Identical trajectories and convergence rounds from both backends.
SuiteResult backend_agreement(std::uint64_t seed = 1);

/// The partition-then-heal checkpoint schedule over several seeds.
SuiteResult leapfrog(std::size_t seeds = 5, std::uint64_t seed = 1);

std::vector<std::string_view> suite_names();
std::optional<SuiteResult> run_named(std::string_view name, std::uint64_t seed = 1);

}  // namespace aggsig::suites
