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

#include "vran/nr/tbs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "vran/common/bits.hpp"
#include "vran/common/error.hpp"

namespace vran::nr {

namespace {

// 38.214 Table 5.1.3.1-1, (Qm, R x 1024).
constexpr std::array<std::array<int, 2>, 29> kTable1 = {{
    {2, 120}, {2, 157}, {2, 193}, {2, 251}, {2, 308}, {2, 379}, {2, 449}, {2, 526},
    {2, 602}, {2, 679}, {4, 340}, {4, 378}, {4, 434}, {4, 490}, {4, 553}, {4, 616},
    {4, 658}, {6, 438}, {6, 466}, {6, 517}, {6, 567}, {6, 616}, {6, 666}, {6, 719},
    {6, 772}, {6, 822}, {6, 873}, {6, 910}, {6, 948},
}};

// 38.214 Table 5.1.3.1-2, (Qm, R x 2048).
constexpr std::array<std::array<int, 2>, 28> kTable2 = {{
    {2, 240},  {2, 386},  {2, 616},  {2, 898},  {2, 1204}, {4, 756},  {4, 868},
    {4, 980},  {4, 1106}, {4, 1232}, {4, 1316}, {6, 932},  {6, 1034}, {6, 1134},
    {6, 1232}, {6, 1332}, {6, 1438}, {6, 1544}, {6, 1644}, {6, 1746}, {8, 1365},
    {8, 1422}, {8, 1508}, {8, 1594}, {8, 1682}, {8, 1770}, {8, 1833}, {8, 1896},
}};

constexpr std::array<int, 93> kSmallTbs = {
    24,   32,   40,   48,   56,   64,   72,   80,   88,   96,   104,  112,  120,  128,
    136,  144,  152,  160,  168,  176,  184,  192,  208,  224,  240,  256,  272,  288,
    304,  320,  336,  352,  368,  384,  408,  432,  456,  480,  504,  528,  552,  576,
    608,  640,  672,  704,  736,  768,  808,  848,  888,  928,  984,  1032, 1064, 1128,
    1160, 1192, 1224, 1256, 1288, 1320, 1352, 1416, 1480, 1544, 1608, 1672, 1736, 1800,
    1864, 1928, 2024, 2088, 2152, 2216, 2280, 2408, 2472, 2536, 2600, 2664, 2728, 2792,
    2856, 2976, 3104, 3240, 3368, 3496, 3624, 3752, 3824,
};

int floor_log2(uint64_t x) { return 63 - std::countl_zero(x); }

}  // namespace

int mcs_table_size(McsTable table) {
  return table == McsTable::T1 ? static_cast<int>(kTable1.size()) : static_cast<int>(kTable2.size());
}

McsEntry mcs_entry(McsTable table, int mcs_index) {
  require(mcs_index >= 0 && mcs_index < mcs_table_size(table), ErrorCode::InvalidConfig,
          "MCS index " + std::to_string(mcs_index) + " outside table " +
              std::string(mcs_table_name(table)));
  if (table == McsTable::T1) {
    const auto& e = kTable1[static_cast<std::size_t>(mcs_index)];
    return {e[0], e[1] * 2};
  }
  const auto& e = kTable2[static_cast<std::size_t>(mcs_index)];
  return {e[0], e[1]};
}

McsTable parse_mcs_table(std::string_view s) {
  if (s == "T1" || s == "t1" || s == "1") return McsTable::T1;
  if (s == "T2" || s == "t2" || s == "2") return McsTable::T2;
  fail(ErrorCode::InvalidConfig, "unknown MCS table '" + std::string(s) + "'");
}

std::string_view mcs_table_name(McsTable table) { return table == McsTable::T1 ? "T1" : "T2"; }

std::span<const int> tbs_small_table() { return kSmallTbs; }

int re_per_prb(int symbols, int overhead) { return std::min(156, 12 * symbols - overhead); }

int64_t compute_tbs(const TbsInputs& in) {
  require(in.prbs >= 1, ErrorCode::InvalidConfig, "prbs must be >= 1");
  require(in.symbols >= 1 && in.symbols <= 14, ErrorCode::InvalidConfig, "symbols must be 1..14");
  require(in.layers >= 1 && in.layers <= 4, ErrorCode::InvalidConfig, "layers must be 1..4");
  require(in.overhead >= 0, ErrorCode::InvalidConfig, "overhead must be >= 0");
  const int nre_prb = re_per_prb(in.symbols, in.overhead);
  require(nre_prb > 0, ErrorCode::InvalidConfig, "overhead leaves no resource elements");
  const McsEntry mcs = mcs_entry(in.table, in.mcs_index);

  // All quantities below carry a factor 2048 so the rate stays integral.
  const int64_t n_re = static_cast<int64_t>(nre_prb) * in.prbs;
  const int64_t ninfo_x = n_re * mcs.rate_x2048 * mcs.qm * in.layers;
  constexpr int64_t kScale = 2048;

  if (ninfo_x <= 3824 * kScale) {
    const int n = std::max(3, floor_log2(static_cast<uint64_t>(ninfo_x)) - 11 - 6);
    const int64_t step = int64_t{1} << n;
    const int64_t nprime = std::max<int64_t>(24, step * (ninfo_x / (step * kScale)));
    for (int t : kSmallTbs)
      if (t >= nprime) return t;
    return kSmallTbs.back();
  }

  const int64_t x = ninfo_x - 24 * kScale;
  const int n = floor_log2(static_cast<uint64_t>(x)) - 11 - 5;
  const int64_t step = int64_t{1} << n;
  // round half up of x / (2^n * 2048)
  const int64_t rounded = (x + step * kScale / 2) / (step * kScale);
  const int64_t nprime = std::max<int64_t>(3840, step * rounded);
  if (mcs.rate_x2048 <= 512) {
    const int64_t c = ceil_div(nprime + 24, 3816);
    return 8 * c * ceil_div(nprime + 24, 8 * c) - 24;
  }
  if (nprime > 8424) {
    const int64_t c = ceil_div(nprime + 24, 8424);
    return 8 * c * ceil_div(nprime + 24, 8 * c) - 24;
  }
  return 8 * ceil_div(nprime + 24, 8) - 24;
}

int64_t compute_tbs(int prbs, int symbols, int layers, int mcs_index, McsTable table,
                    int overhead) {
  return compute_tbs(TbsInputs{prbs, symbols, layers, mcs_index, table, overhead});
}

int64_t available_coded_bits(const TbsInputs& in) {
  const McsEntry mcs = mcs_entry(in.table, in.mcs_index);
  return static_cast<int64_t>(re_per_prb(in.symbols, in.overhead)) * in.prbs * mcs.qm * in.layers;
}

}  // namespace vran::nr
