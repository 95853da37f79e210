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

#include "vran/metrics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vran/common/error.hpp"

namespace vran::metrics {

double nearest_rank(std::span<const double> sorted, int pct) {
  require(!sorted.empty(), ErrorCode::EmptyInput, "percentile of no samples");
  require(pct >= 0 && pct <= 100, ErrorCode::InvalidConfig, "percentile outside 0..100");
  const auto n = static_cast<int64_t>(sorted.size());
  const int64_t rank = std::max<int64_t>(1, (pct * n + 99) / 100);
  return sorted[static_cast<std::size_t>(rank - 1)];
}

LatencyDistribution summarize(std::span<const double> samples) {
  require(!samples.empty(), ErrorCode::EmptyInput, "summarize needs at least one sample");
  std::vector<double> s(samples.begin(), samples.end());
  for (double v : s) require(std::isfinite(v), ErrorCode::InvalidConfig, "non-finite sample");
  std::sort(s.begin(), s.end());
  LatencyDistribution d;
  d.count = static_cast<int64_t>(s.size());
  d.min = s.front();
  d.max = s.back();
  d.p10 = nearest_rank(s, 10);
  d.q1 = nearest_rank(s, 25);
  d.median = nearest_rank(s, 50);
  d.q3 = nearest_rank(s, 75);
  d.p90 = nearest_rank(s, 90);
  d.mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  return d;
}

}  // namespace vran::metrics
