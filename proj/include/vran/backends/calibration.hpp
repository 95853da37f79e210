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
#include <string>
#include <string_view>
#include <vector>

#include "vran/backends/service_time_model.hpp"
#include "vran/lpu/types.hpp"
#include "vran/nr/tbs.hpp"

namespace vran::backends {

// Legacy per-CB encode calls carry this many CBs each.
inline constexpr int kEncodeCbsPerCall = 8;

// Shape of the interface benchmark slot: total_prbs shared by n_tb TBs.
struct BenchSlotConfig {
  int total_prbs = 273;
  int symbols = 12;
  int layers = 1;
  int mcs_index = 28;
  nr::McsTable table = nr::McsTable::T1;
  int overhead = 0;
};

// Floor share per job, remainder to the lowest-indexed jobs.
std::vector<int> split_prbs(int total_prbs, int n_jobs);

struct TbSummary {
  int64_t tbs = 0;
  int num_cbs = 0;
};

std::vector<TbSummary> bench_request(const BenchSlotConfig& cfg, int n_tb);

// Coding calls a generation makes for a request.
int calls_for(lpu::OpKind kind, lpu::InterfaceGeneration g, int n_tb, int total_cbs);

struct CallFeatures {
  double calls = 0, n_tb = 0, n_cb = 0, kbits = 0;
};

CallFeatures request_features(lpu::OpKind kind, lpu::InterfaceGeneration g,
                              std::span<const TbSummary> tbs);

struct CalibrationPoint {
  lpu::OpKind direction = lpu::OpKind::DECODE;
  lpu::InterfaceGeneration generation = lpu::InterfaceGeneration::PER_SLOT;
  int n_tb = 1;
  double mean_us = 0.0;
};

// CSV with header direction,generation,n_tb,mean_us; '#' lines are comments.
std::vector<CalibrationPoint> parse_calibration_csv(std::string_view text);

// The shipped EP-RFSoC measurement table.
const std::vector<CalibrationPoint>& reference_calibration_points();

struct FittedPoint {
  CalibrationPoint point;
  double predicted_us = 0.0;
  double relative_residual = 0.0;  // (predicted - measured) / measured
};

struct CalibrationResult {
  lpu::OpKind direction = lpu::OpKind::DECODE;
  ServiceTimeModel model;  // coefficients only; servers and jitter left at defaults
  std::vector<FittedPoint> points;
  double max_relative_residual = 0.0;
};

// Fits the linear call-cost model of one direction, separately per
// generation, by relative-error weighted non-negative least squares.
// Throws CalibrationFailed on too few points (< 4 or one generation) or a
// degenerate design matrix.
CalibrationResult calibrate_model(std::span<const CalibrationPoint> points, lpu::OpKind direction,
                                  const BenchSlotConfig& bench = {});

std::string calibration_to_json(std::span<const CalibrationResult> results);

}  // namespace vran::backends
