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

// Settled blocks as seen by a guardian, and the per-checkpoint finalization
// record. Block hash = SHA-256(height as 8 bytes big-endian || prev_hash ||
// payload_digest). Genesis has height 0 and an all-zero prev_hash.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "aggsig/digest.hpp"

namespace aggsig::chain {

inline constexpr std::uint64_t kDefaultInterval = 100;

struct BlockHeader {
    std::uint64_t height = 0;
    Digest prev_hash{};
    Digest payload_digest{};

    [[nodiscard]] Digest hash() const;
    friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

/// Genesis plus length - 1 linked headers with random payload digests.
/// Throws StructuralError when length is 0.
std::vector<BlockHeader> build_chain(std::size_t length, std::mt19937_64& rng);

/// True iff heights count up from the first header and every prev_hash is
/// the hash of the header before it. Looks at nothing beyond the headers.
bool verify_integrity(const std::vector<BlockHeader>& chain);

/// Heights in [1, tip] that are multiples of interval.
std::vector<std::uint64_t> checkpoint_heights(std::uint64_t tip, std::uint64_t interval);

enum class CheckpointStatus { Pending, Finalized, Skipped };

class FinalizationLedger {
  public:
    explicit FinalizationLedger(std::uint64_t interval = kDefaultInterval);

    [[nodiscard]] std::uint64_t interval() const { return interval_; }

    /// Finalizes the checkpoint at height with the given block hash. Every
    /// lower checkpoint still pending becomes skipped. Throws StructuralError
    /// for a height that is not a positive multiple of the interval, or when
    /// the height is already finalized under a different hash.
    void record_finalized(std::uint64_t height, const Digest& hash);

    /// Notes a vote that ended without finalization. Leaves finalized and
    /// skipped entries untouched.
    void record_pending(std::uint64_t height);

    [[nodiscard]] CheckpointStatus status(std::uint64_t height) const;
    [[nodiscard]] std::optional<Digest> finalized_hash(std::uint64_t height) const;

    /// Highest finalized checkpoint height, 0 when none.
    [[nodiscard]] std::uint64_t finalized_tip() const { return tip_; }
    /// A block is final when it lies at or below the finalized tip.
    [[nodiscard]] bool block_final(std::uint64_t height) const { return height <= tip_ && tip_ > 0; }

    /// Checks the finalized set is the prefix {0..tip} and no checkpoint
    /// above the tip is marked skipped.
    [[nodiscard]] bool prefix_closed() const;

    [[nodiscard]] const std::map<std::uint64_t, CheckpointStatus>& entries() const { return status_; }

  private:
    void check_height(std::uint64_t height) const;

    std::uint64_t interval_;
    std::uint64_t tip_ = 0;
    std::map<std::uint64_t, CheckpointStatus> status_;
    std::map<std::uint64_t, Digest> hashes_;
};

/// Wrapper matching the functional form: copy of ledger with the outcome
/// recorded (finalized when hash is set, pending otherwise).
FinalizationLedger record_finalization(FinalizationLedger ledger, std::uint64_t height,
                                       const std::optional<Digest>& finalized_hash);

}  // namespace aggsig::chain
