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

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace aggsig {

using Digest = std::array<std::uint8_t, 32>;

/// SHA-256 over the concatenation of the given byte ranges.
Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::initializer_list<std::span<const std::uint8_t>> parts);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace aggsig
