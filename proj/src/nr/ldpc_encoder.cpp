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

#include "vran/nr/ldpc_encoder.hpp"

#include <array>
#include <string>
#include <vector>

#include "vran/common/error.hpp"

namespace vran::nr {

void circulant_xor(uint8_t* acc, const uint8_t* x, int z, int s) {
  const int head = z - s;
  for (int i = 0; i < head; ++i) acc[i] ^= x[i + s];
  for (int i = head; i < z; ++i) acc[i] ^= x[i - head];
}

namespace {

// Solves P^s p = y for p.
void circulant_solve(uint8_t* p, const uint8_t* y, int z, int s) {
  for (int i = 0; i < z; ++i) p[i] = 0;
  circulant_xor(p, y, z, (z - s) % z);
}

}  // namespace

BitVec ldpc_encode_full(BitSpan info, BaseGraphId bg, int z) {
  const ExpandedGraph& g = expanded_graph(bg, z);
  const int info_cols = bg == BaseGraphId::BG1 ? 22 : 10;
  require(static_cast<int>(info.size()) == info_cols * z, ErrorCode::InvalidConfig,
          "information block must hold K = " + std::to_string(info_cols * z) + " bits");
  const auto zz = static_cast<std::size_t>(z);
  BitVec c(static_cast<std::size_t>(g.cols) * zz, 0);
  std::copy(info.begin(), info.end(), c.begin());
  auto col_ptr = [&](int col) { return c.data() + static_cast<std::size_t>(col) * zz; };

  // Core rows 0..3 against core parity columns info_cols..info_cols+3.
  std::array<std::vector<uint8_t>, 4> lambda;
  std::vector<uint8_t> sum(zz, 0);
  for (int r = 0; r < 4; ++r) {
    lambda[static_cast<std::size_t>(r)].assign(zz, 0);
    for (const auto& e : g.row(r))
      if (e.col < info_cols) circulant_xor(lambda[static_cast<std::size_t>(r)].data(), col_ptr(e.col), z, e.shift);
    for (std::size_t i = 0; i < zz; ++i) sum[i] ^= lambda[static_cast<std::size_t>(r)][i];
  }

  // Adding the four core rows cancels every core column except one circulant
  // of the first parity column.
  std::array<std::vector<int>, 4> shift_parity;
  for (auto& v : shift_parity) v.assign(zz, 0);
  for (int r = 0; r < 4; ++r)
    for (const auto& e : g.row(r))
      if (e.col >= info_cols && e.col < info_cols + 4)
        shift_parity[static_cast<std::size_t>(e.col - info_cols)][static_cast<std::size_t>(e.shift)] ^= 1;
  int s0 = -1;
  for (int s = 0; s < z; ++s) {
    if (!shift_parity[0][static_cast<std::size_t>(s)]) continue;
    require(s0 < 0, ErrorCode::UnsupportedConfig, "core parity structure not invertible");
    s0 = s;
  }
  require(s0 >= 0, ErrorCode::UnsupportedConfig, "core parity structure not invertible");
  for (int k = 1; k < 4; ++k)
    for (int s = 0; s < z; ++s)
      require(!shift_parity[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)],
              ErrorCode::UnsupportedConfig, "core parity structure not invertible");
  circulant_solve(col_ptr(info_cols), sum.data(), z, s0);

  // Peel the remaining core parity columns row by row.
  std::array<bool, 4> solved{true, false, false, false};
  std::array<bool, 4> row_used{};
  std::vector<uint8_t> acc(zz);
  for (int pass = 0; pass < 4; ++pass) {
    for (int r = 0; r < 4; ++r) {
      if (row_used[static_cast<std::size_t>(r)]) continue;
      int unknown = -1, unknown_shift = 0, n_unknown = 0;
      for (const auto& e : g.row(r)) {
        if (e.col >= info_cols && e.col < info_cols + 4 && !solved[static_cast<std::size_t>(e.col - info_cols)]) {
          ++n_unknown;
          unknown = e.col;
          unknown_shift = e.shift;
        }
      }
      if (n_unknown != 1) continue;
      acc = lambda[static_cast<std::size_t>(r)];
      for (const auto& e : g.row(r))
        if (e.col >= info_cols && e.col < info_cols + 4 && e.col != unknown)
          circulant_xor(acc.data(), col_ptr(e.col), z, e.shift);
      circulant_solve(col_ptr(unknown), acc.data(), z, unknown_shift);
      solved[static_cast<std::size_t>(unknown - info_cols)] = true;
      row_used[static_cast<std::size_t>(r)] = true;
    }
  }
  for (bool s : solved) require(s, ErrorCode::UnsupportedConfig, "core parity peel did not converge");

  // Extension rows: each owns exactly one parity column, info_cols + r.
  for (int r = 4; r < g.rows; ++r) {
    const int own = info_cols + r;
    std::fill(acc.begin(), acc.end(), 0);
    int own_shift = -1;
    for (const auto& e : g.row(r)) {
      if (e.col == own) {
        own_shift = e.shift;
        continue;
      }
      require(e.col < own, ErrorCode::UnsupportedConfig, "extension row refers to a later column");
      circulant_xor(acc.data(), col_ptr(e.col), z, e.shift);
    }
    require(own_shift >= 0, ErrorCode::UnsupportedConfig, "extension row without its parity column");
    circulant_solve(col_ptr(own), acc.data(), z, own_shift);
  }
  return c;
}

BitVec ldpc_encode(const CodeBlock& cb) {
  const int z = cb.lifting_size;
  require(is_supported_lifting_size(z), ErrorCode::UnsupportedConfig,
          "lifting size " + std::to_string(z) + " is not supported");
  BitVec full = ldpc_encode_full(cb.bits, cb.base_graph, z);
  full.erase(full.begin(), full.begin() + 2 * z);
  return full;
}

bool ldpc_syndrome_zero(BitSpan c, BaseGraphId bg, int z) {
  const ExpandedGraph& g = expanded_graph(bg, z);
  const auto zz = static_cast<std::size_t>(z);
  require(c.size() == static_cast<std::size_t>(g.cols) * zz, ErrorCode::InvalidConfig,
          "codeword length does not match the graph");
  std::vector<uint8_t> acc(zz);
  for (int r = 0; r < g.rows; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    for (const auto& e : g.row(r))
      circulant_xor(acc.data(), c.data() + static_cast<std::size_t>(e.col) * zz, z, e.shift);
    for (uint8_t v : acc)
      if (v) return false;
  }
  return true;
}

}  // namespace vran::nr
