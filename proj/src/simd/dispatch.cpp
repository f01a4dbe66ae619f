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

#include <atomic>
#include <cstdlib>
#include <string>

#include "aggsig/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace aggsig::simd {

namespace {

constexpr Kernels kScalar{
    Isa::Scalar,
    detail::add_mod_scalar,
    detail::add_u64_scalar,
    detail::count_nonzero_scalar,
    detail::any_nonzero_scalar,
    detail::max_u64_scalar,
};

#if defined(AGGSIG_HAVE_AVX2)
constexpr Kernels kAvx2{
    Isa::Avx2,
    detail::add_mod_avx2,
    detail::add_u64_avx2,
    detail::count_nonzero_avx2,
    detail::any_nonzero_avx2,
    detail::max_u64_avx2,
};
#endif

bool host_has(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(AGGSIG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

std::atomic<const Kernels*>& active_slot() {
    static std::atomic<const Kernels*> slot{kernels_for(detect_isa())};
    return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::Scalar;
    if (name == "avx2") return Isa::Avx2;
    return std::nullopt;
}

const Kernels& scalar_kernels() { return kScalar; }

const Kernels* kernels_for(Isa isa) {
    if (!host_has(isa)) return nullptr;
    switch (isa) {
        case Isa::Scalar:
            return &kScalar;
        case Isa::Avx2:
#if defined(AGGSIG_HAVE_AVX2)
            return &kAvx2;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

Isa detect_isa() {
    if (const char* env = std::getenv("AGGSIG_SIMD")) {
        if (auto isa = parse_isa(env); isa && host_has(*isa)) return *isa;
    }
    return host_has(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const Kernels& active() { return *active_slot().load(std::memory_order_relaxed); }

bool set_active(Isa isa) {
    const Kernels* k = kernels_for(isa);
    if (k == nullptr) return false;
    active_slot().store(k, std::memory_order_relaxed);
    return true;
}

}  // namespace aggsig::simd
