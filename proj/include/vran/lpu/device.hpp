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

#include <cstddef>
#include <vector>

#include "vran/lpu/types.hpp"

namespace vran::lpu {

// Backend side of the abstraction layer. The Lpu front end owns queue
// bookkeeping (depth, ownership, HARQ placement checks); devices only see
// validated bursts and report completions per queue.
class Device {
 public:
  virtual ~Device() = default;

  virtual const LpuCapabilities& capabilities() const = 0;

  // True when completion times come from a model clock rather than the wall.
  virtual bool virtual_time() const = 0;

  // One enqueue call is one burst. now_us is the submitter's clock.
  virtual void submit(int queue, int owner, std::vector<CodingOpDescriptor> ops, double now_us) = 0;

  // Completed ops of a queue in completion order, at most max.
  virtual std::vector<Completion> poll(int queue, std::size_t max) = 0;

  // Device-resident HARQ buffers, when the device has any.
  virtual bool has_harq_buffer(int /*owner*/, uint64_t /*id*/) const { return false; }

  // Wall-clock devices: current device clock in microseconds.
  virtual double now_us() const { return 0.0; }
};

}  // namespace vran::lpu
