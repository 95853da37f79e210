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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vran/backends/emulated_device.hpp"
#include "vran/lpu/device.hpp"
#include "vran/lpu/types.hpp"

namespace vran::backends {

enum class BackendKind { EMULATED, SOFTWARE };

struct BackendProfile {
  std::string name;
  BackendKind kind = BackendKind::EMULATED;
  lpu::LpuCapabilities caps;
  // Timing for emulated profiles; unused by the software backend.
  ServiceTimeModel model_encode;
  ServiceTimeModel model_decode;
  bool per_owner_servers = false;
  // False when a value is an assumption of this artifact rather than a
  // published figure.
  bool published = true;
  std::string note;
};

struct DeviceOptions {
  uint64_t seed = 1;
  ClockMode clock = ClockMode::VIRTUAL;
  bool functional = true;
  int worker_count = 4;  // software backend
};

// Registered names: t2, t2-emulated (alias), vran_boost, acc100, software,
// hpp_cpu. Unknown names throw UnknownBackend.
std::vector<std::string> backend_names();
const BackendProfile& backend_profile(std::string_view name);
lpu::LpuCapabilities discover(std::string_view name);

std::shared_ptr<lpu::Device> make_device(std::string_view name, const DeviceOptions& opts = {});

}  // namespace vran::backends
