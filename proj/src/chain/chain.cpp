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

#include "aggsig/chain/chain.hpp"

#include <string>

#include "aggsig/errors.hpp"

namespace aggsig::chain {

Digest BlockHeader::hash() const {
    std::array<std::uint8_t, 8> h{};
    for (int k = 0; k < 8; ++k) h[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(height >> (56 - 8 * k));
    return sha256({h, prev_hash, payload_digest});
}

std::vector<BlockHeader> build_chain(std::size_t length, std::mt19937_64& rng) {
    if (length == 0) throw StructuralError("a chain needs at least the genesis block");
    std::vector<BlockHeader> chain;
    chain.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        BlockHeader b;
        b.height = i;
        if (i > 0) b.prev_hash = chain.back().hash();
        for (std::size_t k = 0; k < b.payload_digest.size(); k += 8) {
            std::uint64_t word = rng();
            for (std::size_t j = 0; j < 8; ++j) b.payload_digest[k + j] = static_cast<std::uint8_t>(word >> (8 * j));
        }
        chain.push_back(b);
    }
    return chain;
}

bool verify_integrity(const std::vector<BlockHeader>& chain) {
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (chain[i].height != chain[i - 1].height + 1) return false;
        if (chain[i].prev_hash != chain[i - 1].hash()) return false;
    }
    return true;
}

std::vector<std::uint64_t> checkpoint_heights(std::uint64_t tip, std::uint64_t interval) {
    if (interval == 0) throw StructuralError("checkpoint interval must be positive");
    std::vector<std::uint64_t> out;
    for (std::uint64_t h = interval; h <= tip; h += interval) out.push_back(h);
    return out;
}

FinalizationLedger::FinalizationLedger(std::uint64_t interval) : interval_(interval) {
    if (interval == 0) throw StructuralError("checkpoint interval must be positive");
}

void FinalizationLedger::check_height(std::uint64_t height) const {
    if (height == 0 || height % interval_ != 0) {
        throw StructuralError("height " + std::to_string(height) +
                              " is not a checkpoint for interval " + std::to_string(interval_));
    }
}

void FinalizationLedger::record_finalized(std::uint64_t height, const Digest& hash) {
    check_height(height);
    auto it = hashes_.find(height);
    if (it != hashes_.end()) {
        if (it->second != hash) {
            throw StructuralError("checkpoint " + std::to_string(height) +
                                  " already finalized with a different hash");
        }
        return;
    }
    if (status(height) == CheckpointStatus::Skipped) {
        // already covered by a later checkpoint; the finalized set does not change
        hashes_.emplace(height, hash);
        status_[height] = CheckpointStatus::Finalized;
        return;
    }
    status_[height] = CheckpointStatus::Finalized;
    hashes_.emplace(height, hash);
    for (std::uint64_t h = interval_; h < height; h += interval_) {
        auto s = status_.find(h);
        if (s == status_.end() || s->second == CheckpointStatus::Pending) {
            status_[h] = CheckpointStatus::Skipped;
        }
    }
    if (height > tip_) tip_ = height;
}

void FinalizationLedger::record_pending(std::uint64_t height) {
    check_height(height);
    if (status_.find(height) == status_.end()) status_[height] = CheckpointStatus::Pending;
}

CheckpointStatus FinalizationLedger::status(std::uint64_t height) const {
    check_height(height);
    auto it = status_.find(height);
    if (it != status_.end()) return it->second;
    return height < tip_ ? CheckpointStatus::Skipped : CheckpointStatus::Pending;
}

std::optional<Digest> FinalizationLedger::finalized_hash(std::uint64_t height) const {
    auto it = hashes_.find(height);
    if (it == hashes_.end()) return std::nullopt;
    return it->second;
}

bool FinalizationLedger::prefix_closed() const {
    for (const auto& [h, s] : status_) {
        if (h <= tip_ && s == CheckpointStatus::Pending) return false;
        if (h > tip_ && s != CheckpointStatus::Pending) return false;
    }
    return true;
}

FinalizationLedger record_finalization(FinalizationLedger ledger, std::uint64_t height,
                                       const std::optional<Digest>& finalized_hash) {
    if (finalized_hash) {
        ledger.record_finalized(height, *finalized_hash);
    } else {
        ledger.record_pending(height);
    }
    return ledger;
}

}  // namespace aggsig::chain
