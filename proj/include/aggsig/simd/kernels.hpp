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

// Data-parallel kernels over limb-planar 256-bit counter arrays.
//
// A limb-planar array of n counters stores limb k of counter u at
// index k * n + u, so each of the four limb planes is a contiguous run of
// n uint64 values. Every kernel has a scalar reference implementation;
// wider variants are chosen at runtime from the detected ISA and must agree
// with the reference bit for bit.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace aggsig::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

struct Kernels {
    Isa isa;

    /// acc = (acc + rhs) mod p, entrywise over n counters. Both inputs must
    /// already be reduced. Returns how many entries needed a reduction.
    std::size_t (*add_mod)(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n,
                           const std::uint64_t* p);

    /// acc += rhs over plain uint64 words, wrapping mod 2^64. Returns how
    /// many words carried out (detectable afterwards as acc[u] < rhs[u]).
    std::size_t (*add_u64)(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n);

    /// Number of counters with any nonzero limb, over `planes` limb planes.
    std::size_t (*count_nonzero)(const std::uint64_t* limbs, std::size_t n, std::size_t planes);

    /// True when any of the count words is nonzero.
    bool (*any_nonzero)(const std::uint64_t* words, std::size_t count);

    /// Largest value in a plain uint64 array, 0 when empty.
    std::uint64_t (*max_u64)(const std::uint64_t* words, std::size_t count);
};

const Kernels& scalar_kernels();

/// Null when the build or the host CPU lacks the ISA.
const Kernels* kernels_for(Isa isa);

/// Best ISA the host supports, honoring the AGGSIG_SIMD environment
/// variable ("scalar" or "avx2") when set.
Isa detect_isa();

/// Kernels used by the library. Defaults to detect_isa().
const Kernels& active();

/// Overrides the active kernel set; returns false if unsupported here.
bool set_active(Isa isa);

}  // namespace aggsig::simd
