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

#include "vran/backends/event_engine.hpp"

#include <algorithm>

#include "vran/common/error.hpp"

namespace vran::backends {

ServerPool::ServerPool(int servers) {
  require(servers >= 1, ErrorCode::InvalidConfig, "a server pool needs at least one server");
  free_at_.assign(static_cast<std::size_t>(servers), 0.0);
}

double ServerPool::schedule(int owner, double arrival_us, int units, double unit_us) {
  double last = arrival_us;
  for (int u = 0; u < units; ++u) {
    auto it = std::min_element(free_at_.begin(), free_at_.end());
    const double start = std::max(*it, arrival_us);
    *it = start + unit_us;
    last = std::max(last, *it);
    units_.push_back({owner, arrival_us, *it});
  }
  return last;
}

int ServerPool::occupancy(double t_us, int exclude_owner) const {
  int n = 0;
  for (const Unit& u : units_)
    if (u.owner != exclude_owner && u.admitted_us <= t_us && u.end_us > t_us) ++n;
  return n;
}

void ServerPool::forget_before(double t_us) {
  std::erase_if(units_, [t_us](const Unit& u) { return u.end_us < t_us; });
}

}  // namespace vran::backends
