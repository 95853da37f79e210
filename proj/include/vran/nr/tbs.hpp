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
#include <span>
#include <string_view>

namespace vran::nr {

enum class McsTable { T1, T2 };

// Target code rate is stored as R x 2048 so that the half-integer rates of
// the 256QAM table stay exact.
struct McsEntry {
  int qm = 0;
  int rate_x2048 = 0;
  double rate() const { return rate_x2048 / 2048.0; }
};

int mcs_table_size(McsTable table);
McsEntry mcs_entry(McsTable table, int mcs_index);
McsTable parse_mcs_table(std::string_view s);
std::string_view mcs_table_name(McsTable table);

// Quantized TBS values used when Ninfo <= 3824.
std::span<const int> tbs_small_table();

struct TbsInputs {
  int prbs = 0;
  int symbols = 12;
  int layers = 1;
  int mcs_index = 0;
  McsTable table = McsTable::T1;
  int overhead = 0;
};

// Resource elements per PRB after overhead, capped at 156.
int re_per_prb(int symbols, int overhead);

int64_t compute_tbs(int prbs, int symbols, int layers, int mcs_index, McsTable table,
                    int overhead = 0);
int64_t compute_tbs(const TbsInputs& in);

// Coded bits available to the TB: N_RE * Qm * layers.
int64_t available_coded_bits(const TbsInputs& in);

}  // namespace vran::nr
