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

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aggsig::netsim {

/// Undirected simple graph over guardians 0..n-1. Neighbor lists are sorted
/// and never contain the node itself.
struct Topology {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> adjacency;

    [[nodiscard]] std::size_t edge_count() const;
    [[nodiscard]] double mean_degree() const;
    [[nodiscard]] bool connected() const;
    [[nodiscard]] bool adjacent(std::size_t a, std::size_t b) const;
    /// Edges (a, b) with a < b, in lexicographic order.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

/// Builds a topology from an edge list. Throws StructuralError on out of
/// range endpoints or self loops; duplicate edges collapse.
Topology from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Peer-sampling growth: guardians join in index order and each links to a
/// uniform random subset of earlier guardians that are still below the
/// degree cap min(2 * degree, n - 1). Joins lay down about n * degree / 4
/// edges, no newcomer taking more than a quarter of the guardians already
/// present; random links between guardians below the cap then bring the
/// total to n * degree / 2. A disconnected result is discarded and
/// regrown from a seed derived from the original.
///
/// Throws ConfigError unless n >= 2 and 1 <= degree < n.
Topology generate_topology(std::size_t n, std::size_t degree, std::uint64_t seed);

/// "a b" per line, a < b, preceded by a "# n=<n> edges=<m>" comment.
std::string to_edge_list(const Topology& topology);

}  // namespace aggsig::netsim
