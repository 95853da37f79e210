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
#include <span>
#include <vector>

namespace vran::metrics {

// Boxplot summary: deciles as whiskers, extrema as fliers.
struct LatencyDistribution {
  int64_t count = 0;
  double min = 0, p10 = 0, q1 = 0, median = 0, q3 = 0, p90 = 0, max = 0, mean = 0;

  friend bool operator==(const LatencyDistribution&, const LatencyDistribution&) = default;
};

// Nearest-rank percentile of sorted data: element ceil(pct * n / 100), 1-based.
double nearest_rank(std::span<const double> sorted, int pct);

// Throws EmptyInput on no samples, InvalidConfig on non-finite ones.
LatencyDistribution summarize(std::span<const double> samples);

}  // namespace vran::metrics
