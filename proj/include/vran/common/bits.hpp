/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The vranscale contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace vran {

// One bit per byte, values 0 or 1. Coding blocks are at most a few thousand
// bytes, so the unpacked form costs little and keeps the interfaces obvious.
using BitVec = std::vector<uint8_t>;
using BitSpan = std::span<const uint8_t>;

inline BitVec random_bits(std::size_t n, std::mt19937_64& rng) {
  BitVec out(n);
  std::size_t i = 0;
  while (i < n) {
    uint64_t w = rng();
    for (int b = 0; b < 64 && i < n; ++b, ++i) out[i] = static_cast<uint8_t>((w >> b) & 1u);
  }
  return out;
}

inline int64_t ceil_div(int64_t a, int64_t b) { return (a + b - 1) / b; }

}  // namespace vran
