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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vran::nr {

enum class BaseGraphId { BG1 = 1, BG2 = 2 };

std::string_view base_graph_name(BaseGraphId bg);

struct BaseGraphEntry {
  int row = 0;
  int col = 0;
  std::array<int, 8> shift{};  // one coefficient per lifting-size set
};

struct BaseGraph {
  BaseGraphId id = BaseGraphId::BG1;
  int rows = 0;
  int cols = 0;
  std::vector<BaseGraphEntry> entries;  // sorted by (row, col)

  int info_cols() const { return id == BaseGraphId::BG1 ? 22 : 10; }
  int codeword_cols() const { return cols; }
};

struct LiftingTable {
  std::vector<std::vector<int>> sets;  // sets[i] = sizes in set i, ascending
  std::vector<int> all;                // every size, ascending
};

uint64_t fnv1a64(std::string_view bytes);

// Parsers for the shipped textual formats. Both verify the declared counts and
// the body checksum and throw Error(Io) on any mismatch.
BaseGraph parse_base_graph(std::string_view text);
LiftingTable parse_lifting_table(std::string_view text);

// Tables loaded once from the embedded copies of data/ldpc.
const BaseGraph& base_graph(BaseGraphId bg);
const LiftingTable& lifting_table();

std::span<const int> lifting_sizes();
bool is_supported_lifting_size(int z);
int lifting_set_index(int z);  // throws UnsupportedConfig for unknown Z

// Rows of the graph expanded for one lifting size: entry shifts reduced mod Z.
struct ExpandedEntry {
  int col;
  int shift;
};

struct ExpandedGraph {
  BaseGraphId bg;
  int z;
  int rows;
  int cols;
  std::vector<int> row_start;  // rows + 1 offsets into edges
  std::vector<ExpandedEntry> edges;

  std::span<const ExpandedEntry> row(int r) const {
    return {edges.data() + row_start[static_cast<std::size_t>(r)],
            static_cast<std::size_t>(row_start[static_cast<std::size_t>(r) + 1] -
                                     row_start[static_cast<std::size_t>(r)])};
  }
};

// Cached; safe to call from several threads.
const ExpandedGraph& expanded_graph(BaseGraphId bg, int z);

}  // namespace vran::nr
