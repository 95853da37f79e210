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

#include <array>
#include <cstdint>

#include "vran/lpu/types.hpp"

namespace vran::backends {

// Linear cost of one coding call, fitted per interface generation.
struct CostCoefficients {
  double fixed_per_call_us = 0.0;
  double per_tb_us = 0.0;
  double per_cb_us = 0.0;
  double per_kbit_us = 0.0;

  double evaluate(double calls, double n_tb, double n_cb, double kbits) const {
    return fixed_per_call_us * calls + per_tb_us * n_tb + per_cb_us * n_cb + per_kbit_us * kbits;
  }
};

enum class JitterKind { NONE, LOGNORMAL };

// Extra latency added to a burst that arrives while the device is
// oversubscribed by other owners. LOGNORMAL draws exp(N(log(scale_us), sigma)).
struct JitterModel {
  JitterKind kind = JitterKind::NONE;
  double scale_us = 0.0;
  double sigma = 1.0;
};

struct ServiceTimeModel {
  std::array<CostCoefficients, 3> by_generation{};  // indexed by InterfaceGeneration
  int parallel_servers = 1;
  JitterModel jitter;
  uint64_t seed = 0;

  const CostCoefficients& coefficients(lpu::InterfaceGeneration g) const {
    return by_generation[static_cast<std::size_t>(g)];
  }
  CostCoefficients& coefficients(lpu::InterfaceGeneration g) {
    return by_generation[static_cast<std::size_t>(g)];
  }

  // Throws InvalidConfig on negative coefficients or servers < 1.
  void validate() const;
};

}  // namespace vran::backends
