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
#include <string>
#include <string_view>

namespace vran::highphy {

struct CellConfig {
  int bandwidth_mhz = 100;
  int prbs = 273;
  int numerology = 1;
  int tti_us = 500;
  int tx_antennas = 4;
  int rx_antennas = 4;
  std::string tdd_pattern = "DDDSU";
  std::string band = "n77";

  void validate() const;
};

enum class SlotKind { D, S, U };

char slot_kind_char(SlotKind k);

// pattern[slot_index mod len]; InvalidConfig on an empty pattern or a
// character outside D/S/U.
SlotKind tdd_slot_kind(int64_t slot_index, std::string_view pattern);

}  // namespace vran::highphy
