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

#include "aggsig/netsim/topology.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "aggsig/errors.hpp"

namespace aggsig::netsim {

std::size_t Topology::edge_count() const {
    std::size_t sum = 0;
    for (const auto& a : adjacency) sum += a.size();
    return sum / 2;
}

double Topology::mean_degree() const {
    return n == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count()) / static_cast<double>(n);
}

bool Topology::connected() const {
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adjacency[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

bool Topology::adjacent(std::size_t a, std::size_t b) const {
    if (a >= n || b >= n) return false;
    return std::binary_search(adjacency[a].begin(), adjacency[a].end(), b);
}

std::vector<std::pair<std::size_t, std::size_t>> Topology::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edge_count());
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b : adjacency[a]) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    return out;
}

Topology from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Topology t;
    t.n = n;
    t.adjacency.assign(n, {});
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw StructuralError("edge endpoint out of range");
        if (a == b) throw StructuralError("self loop in edge list");
        t.adjacency[a].push_back(b);
        t.adjacency[b].push_back(a);
    }
    for (auto& adj : t.adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return t;
}

namespace {

Topology grow(std::size_t n, std::size_t degree, std::mt19937_64& rng) {
    const std::size_t cap = std::min(2 * degree, n - 1);
    const std::size_t target_edges = n * degree / 2;
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<std::size_t> candidates;
    std::size_t edges = 0;

    auto link = [&](std::size_t a, std::size_t b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        ++edges;
    };

    for (std::size_t k = 1; k < n; ++k) {
        // half of the target degree is laid down at join time, the rest by the
        // top-up; a newcomer takes at most a quarter of the existing peers
        std::size_t quota = (k + 1) * degree / 4 - k * degree / 4;
        quota = std::clamp<std::size_t>(quota, 1, std::max<std::size_t>(1, k / 4));
        candidates.clear();
        for (std::size_t v = 0; v < k; ++v) {
            if (adj[v].size() < cap) candidates.push_back(v);
        }
        std::size_t take = std::min({quota, candidates.size(), cap});
        // partial Fisher-Yates: a uniform subset of size take
        for (std::size_t j = 0; j < take; ++j) {
            std::uniform_int_distribution<std::size_t> pick(j, candidates.size() - 1);
            std::swap(candidates[j], candidates[pick(rng)]);
            link(k, candidates[j]);
        }
    }

    // top up with random links between guardians still below the cap
    std::size_t attempts = 0;
    const std::size_t max_attempts = 64 * n + 1024;
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    while (edges < target_edges && attempts++ < max_attempts) {
        std::size_t a = any(rng);
        std::size_t b = any(rng);
        if (a == b || adj[a].size() >= cap || adj[b].size() >= cap) continue;
        if (std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) continue;
        link(a, b);
    }

    Topology t;
    t.n = n;
    t.adjacency = std::move(adj);
    for (auto& a : t.adjacency) std::sort(a.begin(), a.end());
    return t;
}

}  // namespace

Topology generate_topology(std::size_t n, std::size_t degree, std::uint64_t seed) {
    if (n < 2) throw ConfigError("topology needs at least 2 guardians, got " + std::to_string(n));
    if (degree < 1 || degree >= n) {
        throw ConfigError("average degree " + std::to_string(degree) + " infeasible for n=" +
                          std::to_string(n));
    }
    for (std::uint32_t attempt = 0;; ++attempt) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          0x746f706fU, attempt};
        std::mt19937_64 rng(seq);
        Topology t = grow(n, degree, rng);
        if (t.connected()) return t;
        if (attempt == 1000) throw ConfigError("could not grow a connected topology");
    }
}

std::string to_edge_list(const Topology& topology) {
    std::ostringstream out;
    out << "# n=" << topology.n << " edges=" << topology.edge_count() << '\n';
    for (auto [a, b] : topology.edges()) out << a << ' ' << b << '\n';
    return out.str();
}

}  // namespace aggsig::netsim
