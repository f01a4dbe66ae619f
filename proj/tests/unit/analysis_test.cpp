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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aggsig/analysis/omega.hpp"
#include "aggsig/errors.hpp"

namespace aggsig::analysis {
namespace {

using netsim::from_edges;
using netsim::Topology;

Topology k4() { return from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Topology path3() { return from_edges(3, {{0, 1}, {1, 2}}); }

std::vector<mpz_class> ints(std::initializer_list<long> v) {
    std::vector<mpz_class> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

TEST(Omega, BuildExamples) {
    ConnectivityMatrix all = build_omega(k4());
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(all.at(i, j), 1);
    }
    ConnectivityMatrix p = build_omega(path3());
    EXPECT_EQ(p.cells, (std::vector<std::uint8_t>{1, 1, 0, 1, 1, 1, 0, 1, 1}));
    ConnectivityMatrix id = build_omega(from_edges(2, {}));
    EXPECT_EQ(id.cells, (std::vector<std::uint8_t>{1, 0, 0, 1}));
    EXPECT_TRUE(p.symmetric());
    EXPECT_TRUE(p.unit_diagonal());
}

TEST(Omega, PropagateExamples) {
    ConnectivityMatrix all = build_omega(k4());
    EXPECT_EQ(propagate_counts(all, 2, 0), ints({0, 0, 1, 0}));
    EXPECT_EQ(propagate_counts(all, 0, 1), ints({1, 1, 1, 1}));
    EXPECT_EQ(propagate_counts(all, 0, 2), ints({4, 4, 4, 4}));
    ConnectivityMatrix p = build_omega(path3());
    EXPECT_EQ(propagate_counts(p, 0, 2), ints({2, 2, 1}));
    EXPECT_THROW(propagate_counts(p, 3, 1), StructuralError);
}

TEST(Omega, CompositionAndReciprocity) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 5 + rng() % 20;
        Topology t = netsim::generate_topology(n, 1 + rng() % 4, rng());
        ConnectivityMatrix omega = build_omega(t);
        for (std::size_t k = 0; k < n; ++k) {
            auto two = propagate_counts(omega, k, 2);
            EXPECT_EQ(two, omega_times(omega, propagate_counts(omega, k, 1)));
            EXPECT_EQ(propagate_counts(omega, k, 5), omega_times(omega, omega_times(omega, omega_times(omega, two))));
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto from_i = propagate_counts(omega, i, 4);
            for (std::size_t k = 0; k < n; ++k) ASSERT_EQ(from_i[k], propagate_counts(omega, k, 4)[i]);
        }
    }
}

TEST(Omega, ExactBeyondSixtyFourBits) {
    ConnectivityMatrix all = build_omega(k4());
    auto v = propagate_counts(all, 0, 40);  // 4^39
    mpz_class expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 4, 39);
    EXPECT_EQ(v[3], expect);
}

TEST(Spectral, KnownSpectra) {
    SpectralBound k = spectral_bound(build_omega(k4()), 3);
    EXPECT_NEAR(k.lambda_max, 4.0, 1e-8);
    EXPECT_NEAR(k.growth, 64.0, 1e-6);
    SpectralBound id = spectral_bound(build_omega(from_edges(3, {})), 5);
    EXPECT_NEAR(id.lambda_max, 1.0, 1e-9);
    EXPECT_NEAR(id.growth, 1.0, 1e-8);
    SpectralBound p = spectral_bound(build_omega(path3()), 1);
    EXPECT_NEAR(p.lambda_max, 1.0 + std::sqrt(2.0), 1e-8);
}

TEST(Spectral, RejectsAsymmetric) {
    ConnectivityMatrix m{2, {1, 1, 0, 1}};
    EXPECT_THROW(spectral_bound(m, 1), StructuralError);
}

TEST(Spectral, BoundsCountGrowth) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 4 + rng() % 29;
        Topology t = netsim::generate_topology(n, 1 + rng() % std::min<std::size_t>(6, n - 1), rng());
        ConnectivityMatrix omega = build_omega(t);
        for (std::size_t steps = 0; steps <= 5; ++steps) {
            SpectralBound b = spectral_bound(omega, steps);
            for (std::size_t k = 0; k < n; ++k) {
                for (const auto& x : propagate_counts(omega, k, steps)) {
                    ASSERT_LE(x.get_d(), b.growth * static_cast<double>(n) * (1 + 1e-9));
                }
            }
        }
    }
}

TEST(OracleCheck, SimulationMatchesModel) {
    netsim::SimConfig c;
    c.n = 16;
    c.degree = 4;
    c.iterations = 5;
    c.byz_fraction = 0;
    c.break_on_finalize = false;
    c.record_trajectories = true;
    c.seed = 3;
    netsim::SimRun run = netsim::run_simulation(c);
    ConnectivityMatrix omega = build_omega(netsim::generate_topology(16, 4, 3));
    OracleReport r = oracle_check(run, omega);
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.comparisons, 6u * 16u * 16u);

    netsim::SimConfig full = c;
    full.n = 4;
    full.degree = 3;
    full.iterations = 2;
    netsim::SimRun k4run = netsim::run_simulation(full);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t u = 0; u < 4; ++u) EXPECT_EQ(k4run.trajectories[2][i].at(u), U256(4));
    }
    EXPECT_TRUE(oracle_check(k4run, build_omega(k4())).equal);
}

TEST(OracleCheck, DetectsWrongTopology) {
    netsim::SimConfig c;
    c.n = 12;
    c.degree = 3;
    c.iterations = 3;
    c.break_on_finalize = false;
    c.record_trajectories = true;
    netsim::SimRun run = netsim::run_simulation(c);
    ConnectivityMatrix other = build_omega(netsim::generate_topology(12, 3, 99));
    OracleReport r = oracle_check(run, other);
    EXPECT_FALSE(r.equal);
    EXPECT_FALSE(r.mismatches.empty());
}

}  // namespace
}  // namespace aggsig::analysis
