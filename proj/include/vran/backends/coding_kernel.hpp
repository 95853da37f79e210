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

#include <functional>
#include <vector>

#include "vran/lpu/types.hpp"

namespace vran::backends {

// Maps a device-side HARQ token to its buffers (one per CB of the TB);
// returns nullptr when the backend keeps none.
using DeviceHarqResolver = std::function<std::vector<nr::SoftBuffer>*(const lpu::HarqToken&, int num_cbs)>;

// Runs the nr_coding chain an op describes and fills its outputs. Ops
// without functional work are a no-op. Throws on malformed work.
void execute_op(lpu::CodingOpDescriptor& op, const DeviceHarqResolver& device_harq = {});

}  // namespace vran::backends
