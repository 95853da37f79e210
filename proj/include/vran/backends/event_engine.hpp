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
#include <vector>

namespace vran::backends {

// FCFS pool of identical engines in virtual time. Work arrives as a burst of
// equal-length units; each unit takes the earliest-free engine. The pool also
// remembers which owner put units in flight so callers can ask how busy the
// device is from one owner's point of view.
class ServerPool {
 public:
  explicit ServerPool(int servers);

  int servers() const { return static_cast<int>(free_at_.size()); }

  // Schedules units of unit_us each, none starting before arrival_us.
  // Returns the end of the last unit.
  double schedule(int owner, double arrival_us, int units, double unit_us);

  // Units admitted at or before t that are still queued or running at t,
  // not counting exclude_owner's own.
  int occupancy(double t_us, int exclude_owner) const;

  // Drops bookkeeping for units that ended before t.
  void forget_before(double t_us);

 private:
  struct Unit {
    int owner;
    double admitted_us;
    double end_us;
  };
  std::vector<double> free_at_;
  std::vector<Unit> units_;
};

}  // namespace vran::backends
