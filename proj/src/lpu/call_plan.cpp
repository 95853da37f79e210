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

#include "vran/lpu/call_plan.hpp"

#include "vran/common/error.hpp"

namespace vran::lpu {

namespace {
constexpr std::size_t kEncodeBatch = 8;
}

std::vector<std::vector<CbRef>> group_calls(OpKind kind, InterfaceGeneration g,
                                            std::span<const int> cbs_per_tb) {
  std::vector<CbRef> all;
  for (std::size_t t = 0; t < cbs_per_tb.size(); ++t) {
    require(cbs_per_tb[t] >= 1, ErrorCode::InvalidConfig, "a TB has at least one CB");
    for (int c = 0; c < cbs_per_tb[t]; ++c) all.push_back({static_cast<int>(t), c});
  }
  std::vector<std::vector<CbRef>> calls;
  if (all.empty()) return calls;
  switch (g) {
    case InterfaceGeneration::PER_CB: {
      const std::size_t batch = kind == OpKind::DECODE ? 1 : kEncodeBatch;
      for (std::size_t i = 0; i < all.size(); i += batch)
        calls.emplace_back(all.begin() + static_cast<std::ptrdiff_t>(i),
                           all.begin() + static_cast<std::ptrdiff_t>(std::min(all.size(), i + batch)));
      break;
    }
    case InterfaceGeneration::PER_TB:
      for (const CbRef& r : all) {
        if (r.cb == 0) calls.emplace_back();
        calls.back().push_back(r);
      }
      break;
    case InterfaceGeneration::PER_SLOT:
      calls.push_back(std::move(all));
      break;
  }
  return calls;
}

}  // namespace vran::lpu
