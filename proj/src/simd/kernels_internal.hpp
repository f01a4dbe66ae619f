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

namespace aggsig::simd::detail {

std::size_t add_mod_scalar(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n,
                           const std::uint64_t* p);
std::size_t add_u64_scalar(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n);
std::size_t count_nonzero_scalar(const std::uint64_t* limbs, std::size_t n, std::size_t planes);
bool any_nonzero_scalar(const std::uint64_t* words, std::size_t count);
std::uint64_t max_u64_scalar(const std::uint64_t* words, std::size_t count);

#if defined(AGGSIG_HAVE_AVX2)
std::size_t add_mod_avx2(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n,
                         const std::uint64_t* p);
std::size_t add_u64_avx2(std::uint64_t* acc, const std::uint64_t* rhs, std::size_t n);
std::size_t count_nonzero_avx2(const std::uint64_t* limbs, std::size_t n, std::size_t planes);
bool any_nonzero_avx2(const std::uint64_t* words, std::size_t count);
std::uint64_t max_u64_avx2(const std::uint64_t* words, std::size_t count);
#endif

}  // namespace aggsig::simd::detail
