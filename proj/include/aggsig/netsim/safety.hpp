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

// Equivocation harness. Byzantine guardians sign two conflicting hashes A
// and B at the same height and push both; each honest guardian signs exactly
// one. Two protocol instances run side by side over one topology, one per
// hash. In the instance for A, honest guardians that signed B take no part,
// and the other way round.

#include <cstddef>
#include <cstdint>

#include "aggsig/crypto/scheme.hpp"
#include "aggsig/protocol/guardian.hpp"

namespace aggsig::netsim {

struct SafetyConfig {
    std::size_t n = 100;
    std::size_t degree = 10;
    std::size_t byzantine = 33;   // double signers
    std::size_t honest_on_a = 34; // the remaining honest guardians sign B
    bool forge = false;           // byzantine guardians also push forged aggregates
    std::size_t iterations = 0;   // 0: default for (n, degree)
    std::uint64_t seed = 1;
    crypto::BackendKind backend = crypto::BackendKind::Oracle;
    protocol::ThresholdRule threshold_rule = protocol::ThresholdRule::Strict;
};

struct SafetyReport {
    std::size_t threshold = 0;
    std::size_t byzantine = 0;
    std::size_t honest_a = 0;
    std::size_t honest_b = 0;
    std::size_t finalized_a = 0;  // honest guardians that finalized A
    std::size_t finalized_b = 0;
    bool a_final = false;
    bool b_final = false;
    /// Both hashes finalized by honest guardians.
    bool violation = false;
    /// A hash whose possible signers number below the threshold finalized anyway.
    bool count_exceeded = false;
};

/// Throws ConfigError when byzantine > n/3 or the split exceeds the honest count.
SafetyReport run_safety(const SafetyConfig& config);

/// Random scenario for the property run: sizes, degree, byzantine count up to
/// n/3, and a split that often puts one hash right at the threshold.
SafetyConfig random_safety_scenario(std::uint64_t seed);

}  // namespace aggsig::netsim
