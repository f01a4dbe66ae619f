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

#include "aggsig/analysis/omega.hpp"

#include <cmath>
#include <string>

#include "aggsig/crypto/scheme.hpp"
#include "aggsig/errors.hpp"

namespace aggsig::analysis {

bool ConnectivityMatrix::symmetric() const {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (at(i, j) != at(j, i)) return false;
        }
    }
    return true;
}

bool ConnectivityMatrix::unit_diagonal() const {
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i) != 1) return false;
    }
    return true;
}

ConnectivityMatrix build_omega(const netsim::Topology& topology) {
    ConnectivityMatrix m;
    m.n = topology.n;
    m.cells.assign(m.n * m.n, 0);
    for (std::size_t i = 0; i < m.n; ++i) {
        m.cells[i * m.n + i] = 1;
        for (std::size_t j : topology.adjacency[i]) m.cells[i * m.n + j] = 1;
    }
    return m;
}

std::vector<mpz_class> omega_times(const ConnectivityMatrix& omega, const std::vector<mpz_class>& x) {
    if (x.size() != omega.n) throw StructuralError("vector length differs from matrix size");
    std::vector<mpz_class> y(omega.n);
    for (std::size_t i = 0; i < omega.n; ++i) {
        mpz_class acc = 0;
        for (std::size_t j = 0; j < omega.n; ++j) {
            if (omega.at(i, j)) acc += x[j];
        }
        y[i] = acc;
    }
    return y;
}

std::vector<mpz_class> propagate_counts(const ConnectivityMatrix& omega, std::size_t k,
                                        std::size_t t) {
    if (k >= omega.n) {
        throw StructuralError("origin " + std::to_string(k) + " out of range for n=" +
                              std::to_string(omega.n));
    }
    std::vector<mpz_class> x(omega.n, 0);
    x[k] = 1;
    for (std::size_t s = 0; s < t; ++s) x = omega_times(omega, x);
    return x;
}

OracleReport oracle_check(const netsim::SimRun& run, const ConnectivityMatrix& omega) {
    OracleReport report;
    const std::size_t n = omega.n;
    if (run.trajectories.empty() || run.config.n != n) return report;
    report.equal = true;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<mpz_class> x(n, 0);
        x[k] = 1;
        for (std::size_t t = 0; t < run.trajectories.size(); ++t) {
            if (t > 0) x = omega_times(omega, x);
            const auto& row = run.trajectories[t];
            for (std::size_t i = 0; i < n; ++i) {
                ++report.comparisons;
                bool ok = row[i].size() == n && crypto::to_mpz(row[i].at(k)) == x[i];
                if (!ok) {
                    report.equal = false;
                    if (report.mismatches.size() < 8) report.mismatches.push_back({t, i, k});
                }
            }
        }
    }
    return report;
}

SpectralBound spectral_bound(const ConnectivityMatrix& omega, std::size_t t) {
    if (!omega.symmetric()) throw StructuralError("spectral bound needs a symmetric matrix");
    const std::size_t n = omega.n;
    SpectralBound out;
    if (n == 0) return out;

    // Omega is nonnegative, so a positive start vector converges to the Perron vector.
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> w(n);
    double lambda = 0.0;
    for (std::size_t step = 1; step <= 10000; ++step) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (omega.at(i, j)) acc += v[j];
            }
            w[i] = acc;
        }
        double dot = 0.0;
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dot += v[i] * w[i];
            norm2 += w[i] * w[i];
        }
        const double next = dot;  // Rayleigh quotient, v has unit norm
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) throw NumericalError("power iteration collapsed to zero");
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (step > 1 && std::abs(next - lambda) <= 1e-9 * std::abs(next)) {
            out.lambda_max = next;
            out.steps = step;
            out.growth = std::pow(next, static_cast<double>(t));
            return out;
        }
        lambda = next;
    }
    throw NumericalError("power iteration did not converge in 10000 steps");
}

}  // namespace aggsig::analysis
