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

#include "aggsig/netsim/schedule.hpp"

#include "aggsig/errors.hpp"
#include "engine.hpp"

namespace aggsig::netsim {

namespace {

constexpr std::uint32_t kChain = 0x63686169;

}  // namespace

ScheduleReport run_schedule(const ScheduleConfig& config) {
    const SimConfig& base = config.base;
    validate(base);
    if (config.interval == 0) throw ConfigError("checkpoint interval must be positive");

    ScheduleReport report{.chain = {}, .chain_intact = false,
                          .ledger = chain::FinalizationLedger(config.interval),
                          .outcomes = {}, .prefix_closed_throughout = true};
    auto chain_rng = detail::derive_rng(base.seed, kChain);
    report.chain = chain::build_chain(config.checkpoints * config.interval + 1, chain_rng);
    report.chain_intact = chain::verify_integrity(report.chain);
    if (!report.chain_intact) return report;

    const Topology topo = generate_topology(base.n, base.degree, base.seed);
    auto scheme = crypto::make_scheme(base.backend);
    const auto keys = detail::make_keys(*scheme, base.n, base.seed);
    const auto mask = byzantine_mask(base);

    std::size_t offset = 0;
    for (std::size_t j = 0; j < config.checkpoints; ++j) {
        const std::uint64_t height = (j + 1) * config.interval;
        detail::Instance inst;
        inst.topology = &topo;
        inst.scheme = scheme.get();
        inst.roles.resize(base.n);
        for (std::size_t i = 0; i < base.n; ++i) {
            inst.roles[i] = mask[i] ? detail::Role::Byzantine : detail::Role::Honest;
        }
        inst.behavior = base.behavior;
        inst.keys = keys;
        inst.checkpoint = crypto::make_checkpoint(height, report.chain[height].hash(), config.interval);
        std::size_t iters = j < config.iterations.size() ? config.iterations[j] : 0;
        inst.iterations = iters == 0 ? default_iterations(base.n, base.degree) : iters;
        inst.threshold = protocol::finalization_threshold(base.n, base.threshold_rule);
        inst.partitions = base.partitions;
        inst.round_offset = offset;
        inst.seed = base.seed + height;

        SimRun run = detail::run_instance(inst);

        CheckpointOutcome out;
        out.height = height;
        out.hash = inst.checkpoint.hash;
        out.first_round = offset + 1;
        out.iterations = inst.iterations;
        for (std::size_t i = 0; i < base.n; ++i) {
            if (!mask[i] && run.finalized_round[i]) ++out.honest_finalized;
        }
        out.finalized = out.honest_finalized > 0;
        out.convergence_round = run.convergence_round;
        report.ledger = chain::record_finalization(
            std::move(report.ledger), height,
            out.finalized ? std::optional<Digest>(out.hash) : std::nullopt);
        out.prefix_closed_after = report.ledger.prefix_closed();
        report.prefix_closed_throughout = report.prefix_closed_throughout && out.prefix_closed_after;
        report.outcomes.push_back(out);
        offset += inst.iterations;
    }
    return report;
}

ScheduleConfig leapfrog_config(std::uint64_t seed) {
    ScheduleConfig c;
    c.base.n = 64;
    c.base.degree = 8;
    c.base.seed = seed;
    c.base.partitions.push_back({1, 3, random_bipartition(64, 0.5, seed)});
    c.checkpoints = 2;
    c.iterations = {3, 0};
    return c;
}

}  // namespace aggsig::netsim
