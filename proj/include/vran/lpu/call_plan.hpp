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

#include <span>
#include <vector>

#include "vran/lpu/types.hpp"

namespace vran::lpu {

struct CbRef {
  int tb = 0;
  int cb = 0;
};

// How a generation groups a slot's CBs into coding calls: one call per CB
// (decode) or per 8 CBs across TB boundaries (encode) for PER_CB, one per TB
// for PER_TB, one for the slot for PER_SLOT. Calls keep slot order.
std::vector<std::vector<CbRef>> group_calls(OpKind kind, InterfaceGeneration g,
                                            std::span<const int> cbs_per_tb);

}  // namespace vran::lpu
