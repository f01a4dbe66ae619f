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

// Counting model for signer-vector growth. With the early exit removed, the
// k-th entry held by every guardian after t rounds is (Omega^t e_k), where
// Omega is the adjacency matrix with ones on the diagonal.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aggsig/netsim/sim.hpp"
#include "aggsig/netsim/topology.hpp"

namespace aggsig::analysis {

/// Dense 0/1 matrix, row-major.
struct ConnectivityMatrix {
    std::size_t n = 0;
    std::vector<std::uint8_t> cells;

    [[nodiscard]] std::uint8_t at(std::size_t i, std::size_t j) const { return cells[i * n + j]; }
    [[nodiscard]] bool symmetric() const;
    [[nodiscard]] bool unit_diagonal() const;
};

ConnectivityMatrix build_omega(const netsim::Topology& topology);

/// Omega^t e_k, exact. Throws StructuralError unless k < n.
std::vector<mpz_class> propagate_counts(const ConnectivityMatrix& omega, std::size_t k,
                                        std::size_t t);

/// Omega * x, exact.
std::vector<mpz_class> omega_times(const ConnectivityMatrix& omega, const std::vector<mpz_class>& x);

struct OracleMismatch {
    std::size_t round = 0;
    std::size_t node = 0;
    std::size_t origin = 0;
};

struct OracleReport {
    bool equal = false;
    std::size_t comparisons = 0;
    std::vector<OracleMismatch> mismatches;  // first few only
};

/// Compares every recorded trajectory entry against the model. The run
/// must have recorded trajectories with the early exit removed, all honest,
/// no partition, and no reduction mod p (any entry >= p cannot match).
OracleReport oracle_check(const netsim::SimRun& run, const ConnectivityMatrix& omega);

struct SpectralBound {
    double lambda_max = 0.0;
    double growth = 0.0;  // lambda_max^t
    std::size_t steps = 0;
};

/// Largest eigenvalue of a symmetric Omega by power iteration, relative
/// tolerance 1e-9. Throws NumericalError after 10000 steps without
/// convergence, StructuralError for an asymmetric matrix.
SpectralBound spectral_bound(const ConnectivityMatrix& omega, std::size_t t);

}  // namespace aggsig::analysis
