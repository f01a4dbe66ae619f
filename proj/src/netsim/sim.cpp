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

#include "aggsig/netsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "aggsig/errors.hpp"
#include "engine.hpp"

namespace aggsig::netsim {

namespace {

constexpr std::uint32_t kByzSelect = 0x62797a73;
constexpr std::uint32_t kSides = 0x73696465;

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

}  // namespace

std::string_view behavior_name(Behavior b) {
    switch (b) {
        case Behavior::Honest: return "honest";
        case Behavior::Silent: return "silent";
        case Behavior::FakeSignature: return "fake";
        case Behavior::VectorInflation: return "inflate";
    }
    return "?";
}

std::optional<Behavior> parse_behavior(std::string_view name) {
    if (name == "honest") return Behavior::Honest;
    if (name == "silent") return Behavior::Silent;
    if (name == "fake" || name == "fake-signature") return Behavior::FakeSignature;
    if (name == "inflate" || name == "vector-inflation") return Behavior::VectorInflation;
    return std::nullopt;
}

std::vector<std::uint8_t> random_bipartition(std::size_t n, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError("partition fraction outside [0, 1]");
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    auto rng = detail::derive_rng(seed, kSides);
    std::shuffle(order.begin(), order.end(), rng);
    auto ones = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    std::vector<std::uint8_t> side(n, 0);
    for (std::size_t j = 0; j < ones; ++j) side[order[j]] = 1;
    return side;
}

std::size_t default_iterations(std::size_t n, std::size_t degree) {
    if (degree < 2) return std::max<std::size_t>(5, n);
    // ceil(2 log_b n) is the least m with b^m >= n^2
    const long double target = static_cast<long double>(n) * static_cast<long double>(n);
    std::size_t m = 0;
    for (long double power = 1; power < target; power *= static_cast<long double>(degree)) ++m;
    return std::max<std::size_t>(5, m + 1);
}

void validate(const SimConfig& c) {
    if (c.n < 2) throw ConfigError("n must be at least 2");
    if (c.degree < 1 || c.degree >= c.n) {
        throw ConfigError("average degree " + std::to_string(c.degree) + " infeasible for n=" +
                          std::to_string(c.n));
    }
    if (!(c.byz_fraction >= 0.0 && c.byz_fraction <= 1.0 / 3.0 + 1e-12)) {
        throw ConfigError("byzantine fraction must lie in [0, 1/3]");
    }
    auto byz = static_cast<std::size_t>(std::llround(c.byz_fraction * static_cast<double>(c.n)));
    if (byz > c.n / 3) {
        throw ConfigError(std::to_string(byz) + " byzantine guardians exceed n/3 for n=" +
                          std::to_string(c.n));
    }
    if (byz > 0 && c.behavior == Behavior::Honest) {
        throw ConfigError("byzantine guardians need a non-honest behavior");
    }
    for (const auto& w : c.partitions) {
        if (w.side.size() != c.n) throw ConfigError("partition side vector must have n entries");
        if (w.first_round < 1 || w.first_round > w.last_round) {
            throw ConfigError("partition rounds must satisfy 1 <= first <= last");
        }
    }
}

std::vector<std::uint8_t> byzantine_mask(const SimConfig& c) {
    auto byz = static_cast<std::size_t>(std::llround(c.byz_fraction * static_cast<double>(c.n)));
    std::vector<std::size_t> order(c.n);
    for (std::size_t i = 0; i < c.n; ++i) order[i] = i;
    auto rng = detail::derive_rng(c.seed, kByzSelect);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::uint8_t> mask(c.n, 0);
    for (std::size_t j = 0; j < byz && j < c.n; ++j) mask[order[j]] = 1;
    return mask;
}

double SimRun::honest_messages_mean() const {
    if (honest == 0) return 0.0;
    double sum = 0;
    for (std::size_t i = 0; i < messages_per_node.size(); ++i) {
        if (!byzantine_mask[i]) sum += static_cast<double>(messages_per_node[i]);
    }
    return sum / static_cast<double>(honest);
}

double SimRun::honest_messages_median() const {
    std::vector<double> v;
    for (std::size_t i = 0; i < messages_per_node.size(); ++i) {
        if (!byzantine_mask[i]) v.push_back(static_cast<double>(messages_per_node[i]));
    }
    return median_of(std::move(v));
}

double SimRun::honest_bytes_mean() const {
    if (honest == 0) return 0.0;
    double sum = 0;
    for (std::size_t i = 0; i < bytes_per_node.size(); ++i) {
        if (!byzantine_mask[i]) sum += static_cast<double>(bytes_per_node[i]);
    }
    return sum / static_cast<double>(honest);
}

SimRun run_simulation(const SimConfig& config) {
    validate(config);
    return run_simulation(config, generate_topology(config.n, config.degree, config.seed));
}

SimRun run_simulation(const SimConfig& config, const Topology& topology) {
    validate(config);
    if (topology.n != config.n) throw ConfigError("topology size differs from config n");

    auto scheme = crypto::make_scheme(config.backend);
    detail::Instance inst;
    inst.topology = &topology;
    inst.scheme = scheme.get();
    auto mask = byzantine_mask(config);
    inst.roles.resize(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        inst.roles[i] = mask[i] ? detail::Role::Byzantine : detail::Role::Honest;
    }
    inst.behavior = config.behavior;
    inst.keys = detail::make_keys(*scheme, config.n, config.seed);
    Digest hash;
    if (config.checkpoint_hash) {
        hash = *config.checkpoint_hash;
    } else {
        std::array<std::uint8_t, 8> s{};
        for (int k = 0; k < 8; ++k) s[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(config.seed >> (8 * k));
        hash = sha256(s);
    }
    inst.checkpoint = crypto::CheckpointId{config.checkpoint_height, hash};
    inst.iterations = config.iterations == 0 ? default_iterations(config.n, config.degree)
                                             : config.iterations;
    inst.threshold = protocol::finalization_threshold(config.n, config.threshold_rule);
    inst.break_on_finalize = config.break_on_finalize;
    inst.partitions = config.partitions;
    inst.seed = config.seed;
    inst.record_trajectories = config.record_trajectories;

    SimRun run = detail::run_instance(inst);
    run.config = config;
    run.config.iterations = inst.iterations;
    return run;
}

std::string to_json(const SimRun& run, bool include_rounds) {
    using nlohmann::json;
    const auto& c = run.config;
    json j;
    j["config"] = {
        {"n", c.n},
        {"degree", c.degree},
        {"byz_fraction", c.byz_fraction},
        {"behavior", std::string(behavior_name(c.behavior))},
        {"iterations", run.iterations},
        {"seed", c.seed},
        {"backend", std::string(crypto::backend_name(c.backend))},
        {"threshold", run.threshold},
        {"partitions", c.partitions.size()},
        {"break_on_finalize", c.break_on_finalize},
    };
    j["honest"] = run.honest;
    j["byzantine"] = run.byzantine;
    j["mean_degree"] = run.mean_degree;
    j["converged"] = run.converged();
    j["convergence_round"] = run.convergence_round ? json(*run.convergence_round) : json(nullptr);
    j["max_entry"] = run.max_entry.to_decimal();
    j["max_entry_at_convergence"] = run.max_entry_at_convergence.to_decimal();
    j["msgs_per_node"] = run.honest_messages_mean();
    j["msgs_per_node_median"] = run.honest_messages_median();
    j["bytes_per_node"] = run.honest_bytes_mean();
    j["max_message_bytes"] = run.max_message_bytes;
    j["wrap_events"] = run.wrap_events;
    if (include_rounds) {
        json rounds = json::array();
        for (const auto& r : run.rounds) {
            rounds.push_back({
                {"round", r.round},
                {"messages_sent", r.messages_sent},
                {"bytes_sent", r.bytes_sent},
                {"messages_dropped", r.messages_dropped},
                {"messages_discarded", r.messages_discarded},
                {"finalized_honest", r.finalized_honest},
                {"max_entry", r.max_entry.to_decimal()},
                {"max_message_bytes", r.max_message_bytes},
            });
        }
        j["rounds"] = std::move(rounds);
    }
    return j.dump(2);
}

}  // namespace aggsig::netsim
