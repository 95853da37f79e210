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

#include "vran/backends/service_time_model.hpp"

#include "vran/common/error.hpp"

namespace vran::backends {

void ServiceTimeModel::validate() const {
  require(parallel_servers >= 1, ErrorCode::InvalidConfig, "parallel_servers must be >= 1");
  for (const CostCoefficients& c : by_generation)
    require(c.fixed_per_call_us >= 0 && c.per_tb_us >= 0 && c.per_cb_us >= 0 && c.per_kbit_us >= 0,
            ErrorCode::InvalidConfig, "service-time coefficients must be non-negative");
  require(jitter.scale_us >= 0 && jitter.sigma >= 0, ErrorCode::InvalidConfig,
          "jitter scale and sigma must be non-negative");
}

}  // namespace vran::backends
