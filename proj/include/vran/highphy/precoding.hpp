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

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "vran/common/thread_pool.hpp"

namespace vran::highphy {

inline constexpr int kSymbolsPerSlot = 14;
inline constexpr int kSubcarriersPerPrb = 12;

// Complex REs as separate real and imaginary planes, indexed by
// (plane, symbol, subcarrier). A plane is a layer on input, a port on output.
struct ResourceGrid {
  int planes = 0;
  int symbols = kSymbolsPerSlot;
  int subcarriers = 0;
  std::vector<float> re, im;

  ResourceGrid() = default;
  ResourceGrid(int planes, int prbs, int symbols = kSymbolsPerSlot);

  std::size_t index(int plane, int symbol, int sc) const {
    return (static_cast<std::size_t>(plane) * static_cast<std::size_t>(symbols) + static_cast<std::size_t>(symbol)) *
               static_cast<std::size_t>(subcarriers) +
           static_cast<std::size_t>(sc);
  }
  bool all_finite() const;
  friend bool operator==(const ResourceGrid&, const ResourceGrid&) = default;
};

// rows x cols complex matrix, row-major planes.
struct ComplexMatrix {
  int rows = 0, cols = 0;
  std::vector<float> re, im;

  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);
  static ComplexMatrix identity(int n);
  static ComplexMatrix random(int rows, int cols, std::mt19937_64& rng);
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c); }
};

enum class PrecodeKind { SCALAR, VECTOR, WORKERS };

struct PrecodeMode {
  PrecodeKind kind = PrecodeKind::SCALAR;
  int workers = 1;  // WORKERS only

  static PrecodeMode scalar() { return {PrecodeKind::SCALAR, 1}; }
  static PrecodeMode vector() { return {PrecodeKind::VECTOR, 1}; }
  static PrecodeMode workers_n(int n) { return {PrecodeKind::WORKERS, n}; }
};

// out[port] = sum over layers of weights[port, layer] * in[layer], per RE,
// accumulated in layer order so every mode gives bit-identical output.
// WORKERS splits by symbol, then into 24-PRB chunks when there are more
// workers than symbols. Uses pool when given, else a temporary one.
ResourceGrid precode_and_map(const ResourceGrid& layers, const ComplexMatrix& weights, PrecodeMode mode,
                             ThreadPool* pool = nullptr);

// Fills a layer grid with unit-power QPSK symbols taken cyclically from bits.
void fill_qpsk(ResourceGrid& grid, const std::vector<uint8_t>& bits);

}  // namespace vran::highphy
