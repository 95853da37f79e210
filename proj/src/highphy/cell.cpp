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

#include "vran/highphy/cell.hpp"

#include "vran/common/error.hpp"

namespace vran::highphy {

void CellConfig::validate() const {
  require(prbs >= 1 && prbs <= 273, ErrorCode::InvalidConfig, "prbs must be 1..273");
  require(numerology == 1 && tti_us == 500, ErrorCode::InvalidConfig, "numerology 1 requires a 500 us TTI");
  require(tdd_pattern.size() == 5, ErrorCode::InvalidConfig, "TDD pattern must have 5 slots");
  for (char c : tdd_pattern)
    require(c == 'D' || c == 'S' || c == 'U', ErrorCode::InvalidConfig, "TDD pattern uses only D, S and U");
  require(tx_antennas >= 1 && rx_antennas >= 1, ErrorCode::InvalidConfig, "need at least one antenna");
}

char slot_kind_char(SlotKind k) {
  switch (k) {
    case SlotKind::D: return 'D';
    case SlotKind::S: return 'S';
    case SlotKind::U: return 'U';
  }
  return '?';
}

SlotKind tdd_slot_kind(int64_t slot_index, std::string_view pattern) {
  require(!pattern.empty(), ErrorCode::InvalidConfig, "empty TDD pattern");
  require(slot_index >= 0, ErrorCode::InvalidConfig, "negative slot index");
  for (char c : pattern)
    require(c == 'D' || c == 'S' || c == 'U', ErrorCode::InvalidConfig,
            std::string("invalid TDD pattern character '") + c + "'");
  switch (pattern[static_cast<std::size_t>(slot_index % static_cast<int64_t>(pattern.size()))]) {
    case 'D': return SlotKind::D;
    case 'S': return SlotKind::S;
    default: return SlotKind::U;
  }
}

}  // namespace vran::highphy
